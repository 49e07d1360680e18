"""Tiny expression grammar for forcing terms.

Accepted: numbers, the variable ``x``, the imaginary unit ``i`` (or ``1j``
literals), ``+ - * /``, ``**`` with a constant exponent, parentheses, and the
functions ``exp``, ``sin``, ``cos``.  Anything else raises
:class:`ExpressionError`.
"""

from __future__ import annotations

import ast
import operator

import numpy as np

from .errors import ExpressionError

_FUNCS = {"exp": np.exp, "sin": np.sin, "cos": np.cos}
_CONSTS = {"i": 1j, "pi": np.pi}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _compile(node):
    """Turn an AST node into a function of x."""
    if isinstance(node, ast.Expression):
        return _compile(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float, complex)):
            raise ExpressionError(f"unsupported literal {node.value!r}")
        value = node.value
        return lambda x: value
    if isinstance(node, ast.Name):
        if node.id == "x":
            return lambda x: x
        if node.id in _CONSTS:
            value = _CONSTS[node.id]
            return lambda x: value
        raise ExpressionError(f"unknown name {node.id!r}")
    if isinstance(node, ast.BinOp):
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise ExpressionError(f"unsupported operator {type(node.op).__name__}")
        if op is operator.pow and _mentions_x(node.right):
            raise ExpressionError("exponents must be constant")
        left, right = _compile(node.left), _compile(node.right)
        return lambda x: op(left(x), right(x))
    if isinstance(node, ast.UnaryOp):
        op = _UNOPS.get(type(node.op))
        if op is None:
            raise ExpressionError(f"unsupported operator {type(node.op).__name__}")
        arg = _compile(node.operand)
        return lambda x: op(arg(x))
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS:
            name = getattr(node.func, "id", "?")
            raise ExpressionError(f"unknown function {name!r}")
        if len(node.args) != 1 or node.keywords:
            raise ExpressionError(f"{node.func.id} takes exactly one argument")
        fn, arg = _FUNCS[node.func.id], _compile(node.args[0])
        return lambda x: fn(arg(x))
    raise ExpressionError(f"unsupported syntax {type(node).__name__}")


def _mentions_x(node) -> bool:
    return any(isinstance(n, ast.Name) and n.id == "x" for n in ast.walk(node))


def parse_expression(text: str):
    """Compile ``text`` into a vectorized function of x."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from exc
    body = _compile(tree)

    def fn(x):
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(body(x), x.shape) * np.ones_like(x)

    return fn
