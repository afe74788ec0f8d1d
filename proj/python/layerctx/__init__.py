"""Layer-oriented adaptation runtime: layered dispatch, dynamically scoped
activation, declarative layer constraints, and a feedback-driven case study."""

from ._layerctx import (
    ActivationError,
    ConfigError,
    ContextState,
    DispatchCursor,
    Error,
    Layer,
    Method,
    PartialKind,
    PiController,
    Runtime,
    __version__,
    bench_dispatch,
    bench_page,
    demo_figure,
    demo_resource_storage,
    run_study,
)

__all__ = [
    "ActivationError",
    "ConfigError",
    "ContextState",
    "DispatchCursor",
    "Error",
    "Layer",
    "Method",
    "PartialKind",
    "PiController",
    "Runtime",
    "__version__",
    "bench_dispatch",
    "bench_page",
    "demo_figure",
    "demo_resource_storage",
    "run_study",
]
