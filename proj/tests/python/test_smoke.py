import json

import pytest

import layerctx


def test_version():
    assert layerctx.__version__ == "0.1.0"


def test_demo_figure_lines():
    lines = layerctx.demo_figure()
    assert lines == [
        "Figure: drawing",
        "Figure: adding border",
        "Border: drawing",
        "Border: applying shadow",
        "Figure: drawing",
        "Figure: applying shadow",
    ]


def test_layered_dispatch_and_scoping():
    rt = layerctx.Runtime()
    shout = rt.define_layer("shout")
    polite = rt.define_layer("polite", {"tone": "soft"})
    greet = rt.register_method("greet", lambda args: "hello " + args[0])
    rt.add_around(greet, shout, lambda cur, args: cur.proceed(args).upper())
    rt.add_around(greet, polite, lambda cur, args: cur.proceed(args) + ", please")

    ctx = rt.make_context()
    assert rt.call(ctx, greet, ["world"]) == "hello world"
    assert ctx.with_layers([shout], lambda: rt.call(ctx, greet, ["world"])) == "HELLO WORLD"

    # newest activation wraps outermost
    out = ctx.with_layers([shout, polite], lambda: rt.call(ctx, greet, ["bob"]))
    assert out == "HELLO BOB, please"

    inner = ctx.with_layers(
        [shout],
        lambda: ctx.without_layers([shout], lambda: rt.call(ctx, greet, ["eve"])),
    )
    assert inner == "hello eve"
    assert ctx.active_layers() == []


def test_chain_reflection():
    rt = layerctx.Runtime()
    log = rt.define_layer("log")
    m = rt.register_method("work", lambda args: None)
    rt.add_before(m, log, lambda args: None)
    rt.add_around(m, log, lambda cur, args: cur.proceed(args))
    ctx = rt.make_context()
    plan = ctx.with_layers([log], lambda: rt.compose_chain(ctx, m))
    assert plan["befores"] == [("log", layerctx.PartialKind.BEFORE)]
    assert plan["arounds"][-1] == (None, layerctx.PartialKind.AROUND)
    assert ("work", layerctx.PartialKind.AROUND) in rt.partials_of(log)


def test_constraint_refusal():
    rt = layerctx.Runtime()
    hi = rt.define_layer("high_band")
    lo = rt.define_layer("low_band")
    rt.declare_excludes(hi, lo)
    ctx = rt.make_context()
    ran = []
    with pytest.raises(layerctx.ActivationError):
        ctx.with_layers([hi, lo], lambda: ran.append(1))
    assert ran == []
    assert ctx.active_layers() == []


def test_pi_controller_step():
    pi = layerctx.PiController(setpoint=5e6, kp=1.0, ki=0.0)
    assert pi.output == pytest.approx(1.0)
    assert pi.step(2.5e6, 1.0) == pytest.approx(0.5)
    assert pi.step(5e6, 1.0) == pytest.approx(0.0)


def test_run_study_deterministic():
    cfg = json.dumps(
        {
            "simulation": {"n_users": 10, "ramp_interval": 0, "duration": 20, "seed": 3},
            "setpoints": [{"t": 0, "bytes_per_sec": 350000}],
        }
    )
    r1 = layerctx.run_study(cfg, "b")
    r2 = layerctx.run_study(cfg, "b")
    assert r1["b"]["rows"] == r2["b"]["rows"]
    assert len(r1["b"]["rows"]) == 20
    assert r1["b"]["total_pages"] == 200
    assert "a" not in r1

    bad = json.dumps({"simulation": {"n_users": "ten"}})
    with pytest.raises(layerctx.ConfigError):
        layerctx.run_study(bad, "b")


def test_storage_demo_counts():
    lines_cached, base_cached = layerctx.demo_resource_storage(True)
    _, base_plain = layerctx.demo_resource_storage(False)
    assert base_cached == 1
    assert base_plain == 2
    assert any("cache" in ln for ln in lines_cached)


def test_bench_wrappers():
    d = layerctx.bench_dispatch(2, calls=2000, reps=1)
    assert d["cop_ns"] > 0 and d["plain_ns"] > 0
    assert d["checksum"] == 2000 * 2001 // 2
    p = layerctx.bench_page(200, reps=1)
    assert p["cop_ns"] > 0 and p["conditional_ns"] > 0
