#pragma once

// Reference semantics used to cross-check the runtime. Everything here is an
// independent, brute-force formulation: effective order from the raw entry
// trace by the most-recent-entry rule, chain composition from the order and
// a partial table, constraint checking straight from the definitions. Kept
// deliberately naive (quadratic walks) so bugs in the real implementation
// are unlikely to be mirrored.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "layerctx/constraints.hpp"
#include "layerctx/context.hpp"
#include "layerctx/dispatch.hpp"
#include "layerctx/runtime.hpp"

namespace refsem {

// Effective order from a flat entry list (oldest first): a layer is active
// iff its last entry is an activation; active layers are ordered by the
// position of that last entry, newest first.
inline std::vector<layerctx::Layer> effective_order(
    const std::vector<layerctx::ContextEntry>& entries) {
  std::vector<layerctx::Layer> out;
  for (std::size_t i = entries.size(); i-- > 0;) {
    bool later = false;
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (entries[j].layer == entries[i].layer) later = true;
    if (later) continue;
    if (entries[i].mode == layerctx::EntryMode::Activate) out.push_back(entries[i].layer);
  }
  return out;
}

// Mirror of a context: indefinite list plus explicit frames.
struct RefContext {
  std::vector<layerctx::ContextEntry> indefinite;
  std::vector<std::vector<layerctx::ContextEntry>> frames;

  std::vector<layerctx::ContextEntry> flat() const {
    std::vector<layerctx::ContextEntry> out = indefinite;
    for (const auto& frame : frames) out.insert(out.end(), frame.begin(), frame.end());
    return out;
  }
  std::vector<layerctx::Layer> effective() const { return effective_order(flat()); }

  bool has_indefinite(layerctx::Layer l) const {
    for (const auto& e : indefinite)
      if (e.layer == l) return true;
    return false;
  }
  void remove_last_indefinite(layerctx::Layer l) {
    for (std::size_t i = indefinite.size(); i-- > 0;) {
      if (indefinite[i].layer == l) {
        indefinite.erase(indefinite.begin() + static_cast<std::ptrdiff_t>(i));
        return;
      }
    }
    throw std::logic_error("remove_last_indefinite: not present");
  }
};

// One step of an activation script. With/Without open a scope around the
// rest of the script; ActIndef/Deact are linear.
struct ScriptOp {
  enum Kind { With, Without, ActIndef, Deact } kind = With;
  std::vector<layerctx::Layer> layers;
};

// Full op alphabet over a layer set: with_layers over every sequence of
// length 0..2 (repeats allowed), without_layers over length 1..2, plus
// activate/deactivate per layer. For 3 layers this yields 31 ops.
inline std::vector<ScriptOp> script_alphabet(std::span<const layerctx::Layer> layers) {
  std::vector<ScriptOp> ops;
  ops.push_back({ScriptOp::With, {}});
  for (layerctx::Layer a : layers) ops.push_back({ScriptOp::With, {a}});
  for (layerctx::Layer a : layers)
    for (layerctx::Layer b : layers) ops.push_back({ScriptOp::With, {a, b}});
  for (layerctx::Layer a : layers) ops.push_back({ScriptOp::Without, {a}});
  for (layerctx::Layer a : layers)
    for (layerctx::Layer b : layers) ops.push_back({ScriptOp::Without, {a, b}});
  for (layerctx::Layer a : layers) ops.push_back({ScriptOp::ActIndef, {a}});
  for (layerctx::Layer a : layers) ops.push_back({ScriptOp::Deact, {a}});
  return ops;
}

inline std::vector<layerctx::ContextEntry> make_entries(
    const std::vector<layerctx::Layer>& layers, layerctx::EntryMode mode) {
  std::vector<layerctx::ContextEntry> out;
  out.reserve(layers.size());
  for (layerctx::Layer l : layers) out.push_back({l, mode});
  return out;
}

// Applies script[i..] to both the real context and the mirror, nesting
// scoped ops around the remainder, and calls check(ctx, ref) innermost. A
// deactivate without a matching activation must throw on the real side and
// is skipped on both.
template <typename Check>
void run_script(layerctx::ContextState& ctx, RefContext& ref,
                std::span<const ScriptOp> script, std::size_t i, const Check& check) {
  if (i == script.size()) {
    check(ctx, ref);
    return;
  }
  const ScriptOp& op = script[i];
  switch (op.kind) {
    case ScriptOp::With:
      ctx.with_layers(std::span<const layerctx::Layer>(op.layers), [&] {
        ref.frames.push_back(make_entries(op.layers, layerctx::EntryMode::Activate));
        run_script(ctx, ref, script, i + 1, check);
        ref.frames.pop_back();
      });
      break;
    case ScriptOp::Without:
      ctx.without_layers(std::span<const layerctx::Layer>(op.layers), [&] {
        ref.frames.push_back(make_entries(op.layers, layerctx::EntryMode::Suppress));
        run_script(ctx, ref, script, i + 1, check);
        ref.frames.pop_back();
      });
      break;
    case ScriptOp::ActIndef:
      ctx.activate_indefinite(op.layers[0]);
      ref.indefinite.push_back({op.layers[0], layerctx::EntryMode::Activate});
      run_script(ctx, ref, script, i + 1, check);
      break;
    case ScriptOp::Deact:
      if (ref.has_indefinite(op.layers[0])) {
        ctx.deactivate(op.layers[0]);
        ref.remove_last_indefinite(op.layers[0]);
      } else {
        bool threw = false;
        try {
          ctx.deactivate(op.layers[0]);
        } catch (const layerctx::Error&) {
          threw = true;
        }
        if (!threw)
          throw std::logic_error("deactivate of inactive layer did not throw");
      }
      run_script(ctx, ref, script, i + 1, check);
      break;
  }
}

// Chain composition by definition: befores in effective order, arounds in
// effective order ending with the base, afters in reverse effective order.
struct StagePlan {
  std::optional<layerctx::Layer> layer;  // empty = base
  layerctx::PartialKind kind = layerctx::PartialKind::Around;
};

struct ChainPlan {
  std::vector<StagePlan> befores;
  std::vector<StagePlan> arounds;
  std::vector<StagePlan> afters;
};

template <typename HasFn>  // has(layer, kind) -> bool
ChainPlan compose_reference(const std::vector<layerctx::Layer>& order, const HasFn& has) {
  ChainPlan plan;
  for (layerctx::Layer l : order) {
    if (has(l, layerctx::PartialKind::Before))
      plan.befores.push_back({l, layerctx::PartialKind::Before});
    if (has(l, layerctx::PartialKind::Around))
      plan.arounds.push_back({l, layerctx::PartialKind::Around});
  }
  plan.arounds.push_back({std::nullopt, layerctx::PartialKind::Around});
  for (std::size_t i = order.size(); i-- > 0;) {
    if (has(order[i], layerctx::PartialKind::After))
      plan.afters.push_back({order[i], layerctx::PartialKind::After});
  }
  return plan;
}

inline bool stages_match(const std::vector<layerctx::ChainStage>& impl,
                         const std::vector<StagePlan>& ref) {
  if (impl.size() != ref.size()) return false;
  for (std::size_t i = 0; i < impl.size(); ++i) {
    if (impl[i].layer.has_value() != ref[i].layer.has_value()) return false;
    if (impl[i].layer && !(*impl[i].layer == *ref[i].layer)) return false;
    if (impl[i].kind != ref[i].kind) return false;
  }
  return true;
}

inline bool chain_matches(const layerctx::DispatchChain& impl, const ChainPlan& ref) {
  return stages_match(impl.befores, ref.befores) && stages_match(impl.arounds, ref.arounds) &&
         stages_match(impl.afters, ref.afters);
}

// Event trace a full successful call must produce, from the plan: befores,
// around entries outside-in, the base, around exits inside-out, afters.
inline std::vector<std::string> expected_trace(const ChainPlan& plan) {
  std::vector<std::string> out;
  for (const StagePlan& s : plan.befores) out.push_back("before:" + s.layer->name());
  for (const StagePlan& s : plan.arounds) {
    if (s.layer)
      out.push_back("enter:" + s.layer->name());
    else
      out.push_back("base");
  }
  for (std::size_t i = plan.arounds.size(); i-- > 0;)
    if (plan.arounds[i].layer) out.push_back("exit:" + plan.arounds[i].layer->name());
  for (const StagePlan& s : plan.afters) out.push_back("after:" + s.layer->name());
  return out;
}

// Constraint verdicts straight from the definitions.
struct RefViolation {
  bool excludes = false;
  layerctx::Layer a, b;
};

inline std::vector<RefViolation> check_constraints(
    std::span<const std::pair<layerctx::Layer, layerctx::Layer>> excludes,
    std::span<const std::pair<layerctx::Layer, layerctx::Layer>> dependencies,
    std::span<const layerctx::Layer> set) {
  auto in = [&](layerctx::Layer l) {
    for (layerctx::Layer s : set)
      if (s == l) return true;
    return false;
  };
  std::vector<RefViolation> out;
  for (const auto& [a, b] : excludes)
    if (in(a) && in(b)) out.push_back({true, a, b});
  for (const auto& [a, b] : dependencies)
    if (in(a) && !in(b)) out.push_back({false, a, b});
  return out;
}

inline bool violations_match(const layerctx::ValidationResult& impl,
                             const std::vector<RefViolation>& ref) {
  if (impl.violations.size() != ref.size()) return false;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const layerctx::ConstraintViolation& v = impl.violations[i];
    const bool is_ex = v.kind == layerctx::ConstraintViolation::Kind::Excludes;
    if (is_ex != ref[i].excludes || !(v.a == ref[i].a) || !(v.b == ref[i].b)) return false;
  }
  return true;
}

}  // namespace refsem
