from ._core import (
    Formula,
    FormatError,
    KripkeModel,
    ModelError,
    ParseError,
    ResourceLimitError,
    check,
    classify,
    classify_functions,
    closure_size,
    generate,
    make_random_model,
    verify,
)

__all__ = [
    "Formula",
    "FormatError",
    "KripkeModel",
    "ModelError",
    "ParseError",
    "ResourceLimitError",
    "check",
    "classify",
    "classify_functions",
    "closure_size",
    "generate",
    "make_random_model",
    "verify",
]
