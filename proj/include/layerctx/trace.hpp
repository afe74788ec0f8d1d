#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace layerctx {

// Receives one line of demo/diagnostic output, no trailing newline.
using TraceSink = std::function<void(std::string_view)>;

TraceSink stdout_sink();

struct TraceCollector {
  std::vector<std::string> lines;
  TraceSink sink() {
    return [this](std::string_view line) { lines.emplace_back(line); };
  }
};

}  // namespace layerctx
