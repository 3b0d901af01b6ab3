"""Strict lambda-definability workbench: compile G expressions to typed Church-numeral terms."""

from .compiler import CompiledFunction, WidthTooSmall, compile_function, min_width, verify
from .encodings import church, decode_numeral
from .gexpr import EPSet, GFunction, eval_function, if_in_epset
from .simple_types import check_type, infer_principal, omega, tau_s
from .terms import App, Lam, Var, betaeta_equal, betaeta_normal_form

__all__ = [
    "App", "Lam", "Var", "betaeta_equal", "betaeta_normal_form",
    "check_type", "infer_principal", "omega", "tau_s",
    "church", "decode_numeral",
    "EPSet", "GFunction", "eval_function", "if_in_epset",
    "CompiledFunction", "WidthTooSmall", "compile_function", "min_width", "verify",
]
