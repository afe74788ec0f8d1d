#include "layerctx/demos.hpp"

#include <cstdio>
#include <unordered_map>

#include "layerctx/runtime.hpp"

namespace layerctx {

TraceSink stdout_sink() {
  return [](std::string_view line) {
    std::fwrite(line.data(), 1, line.size(), stdout);
    std::fputc('\n', stdout);
  };
}

void demo_figure(const TraceSink& sink) {
  Runtime rt;
  const Layer bordered = rt.define_layer("bordered");
  const Layer shadowed = rt.define_layer("shadowed");

  const Method figure_print = rt.register_method(
      "Figure.print", BaseFn([sink](Args) -> Value {
        sink("Figure: drawing");
        return {};
      }));
  const Method border_print = rt.register_method(
      "Border.print", BaseFn([sink](Args) -> Value {
        sink("Border: drawing");
        return {};
      }));

  rt.add_around(figure_print, bordered,
                [sink, &rt, border_print](DispatchCursor& cur, Args args) -> Value {
                  sink("Figure: adding border");
                  rt.call(cur.context(), border_print);
                  return cur.proceed(args);
                });
  rt.add_around(figure_print, shadowed,
                [sink](DispatchCursor& cur, Args args) -> Value {
                  Value r = cur.proceed(args);
                  sink("Figure: applying shadow");
                  return r;
                });
  rt.add_around(border_print, shadowed,
                [sink](DispatchCursor& cur, Args args) -> Value {
                  Value r = cur.proceed(args);
                  sink("Border: applying shadow");
                  return r;
                });

  ContextState ctx = rt.make_context();
  rt.call(ctx, figure_print);
  ctx.with_layers({bordered, shadowed}, [&] { rt.call(ctx, figure_print); });
}

std::vector<std::string> demo_figure() {
  TraceCollector collector;
  demo_figure(collector.sink());
  return std::move(collector.lines);
}

StorageDemo demo_resource_storage(bool use_caching_layer) {
  StorageDemo demo;
  TraceCollector collector;
  const TraceSink sink = collector.sink();

  Runtime rt;
  const Layer minimize = rt.define_layer("MinimizeRespTime", {{"goal", "latency"}});

  int base_calls = 0;
  const Method request = rt.register_method(
      "ResourceStorage.request", BaseFn([sink, &base_calls](Args args) -> Value {
        ++base_calls;
        const std::int64_t id = as_int(args[0]);
        sink("ResourceStorage: retrieving item " + std::to_string(id));
        return "item-" + std::to_string(id);
      }));

  std::unordered_map<std::int64_t, std::string> cache;
  rt.add_around(request, minimize,
                [sink, &cache](DispatchCursor& cur, Args args) -> Value {
                  const std::int64_t id = as_int(args[0]);
                  if (auto it = cache.find(id); it != cache.end()) {
                    sink("MinimizeRespTime: cache hit for request " + std::to_string(id));
                    return it->second;
                  }
                  sink("MinimizeRespTime: cache miss for request " + std::to_string(id));
                  Value result = cur.proceed(args);
                  cache.emplace(id, as_string(result));
                  return result;
                });

  ContextState ctx = rt.make_context();
  const Value args[] = {Value(std::int64_t{7})};
  auto issue = [&] {
    const Value r = rt.call(ctx, request, args);
    sink("request(7) -> " + as_string(r));
  };
  if (use_caching_layer) {
    ctx.with_layers({minimize}, [&] {
      issue();
      issue();
    });
  } else {
    issue();
    issue();
  }

  demo.lines = std::move(collector.lines);
  demo.base_invocations = base_calls;
  return demo;
}

void demo_resource_storage(const TraceSink& sink) {
  const StorageDemo demo = demo_resource_storage(true);
  for (const std::string& line : demo.lines) sink(line);
}

}  // namespace layerctx
