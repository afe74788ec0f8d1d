#pragma once

#include <string>
#include <vector>

#include "layerctx/trace.hpp"

namespace layerctx {

// Figure-drawing demo: a figure and its border, decorated by a `bordered`
// layer that injects border drawing and a `shadowed` layer that appends a
// shadow after proceeding. Prints the base call first, then the same call
// with both layers active. Emits exactly six lines.
void demo_figure(const TraceSink& sink);
std::vector<std::string> demo_figure();

struct StorageDemo {
  std::vector<std::string> lines;
  int base_invocations = 0;
};

// Resource-storage demo: a `MinimizeRespTime` layer adds caching around the
// retrieval method. Two identical requests hit the base once under the layer
// (miss then hit) and twice without it.
StorageDemo demo_resource_storage(bool use_caching_layer = true);
void demo_resource_storage(const TraceSink& sink);

}  // namespace layerctx
