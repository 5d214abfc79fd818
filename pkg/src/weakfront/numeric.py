"""Exact vector/matrix helpers on plain tuples of Fractions.

All engine data lives in immutable tuples.  Numbers are ``fractions.Fraction``
in exact mode (the default everywhere that matters) or ``float`` when a
positive tolerance is requested.  Mixed arithmetic works either way, so the
helpers below are mode-agnostic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, float]
Vec = tuple
Mat = tuple  # tuple of row tuples


def to_exact(x: Number) -> Fraction:
    """Convert a number to an exact Fraction.

    Floats go through their decimal string form, so a JSON ``0.1`` means
    1/10 rather than the binary float it parses to.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite number: {x!r}")
        return Fraction(str(x))
    raise TypeError(f"not a number: {x!r}")


def exact_vec(v: Sequence[Number]) -> Vec:
    return tuple(to_exact(c) for c in v)


def exact_mat(rows: Sequence[Sequence[Number]]) -> Mat:
    return tuple(exact_vec(r) for r in rows)


def is_finite_number(x: Number) -> bool:
    if isinstance(x, float):
        return math.isfinite(x)
    return isinstance(x, (int, Fraction))


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vec_scale(t: Number, a: Vec) -> Vec:
    return tuple(t * x for x in a)


def dot(a: Vec, b: Vec) -> Number:
    return sum(x * y for x, y in zip(a, b, strict=True))


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(vec_add(ra, rb) for ra, rb in zip(a, b, strict=True))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(vec_sub(ra, rb) for ra, rb in zip(a, b, strict=True))


def mat_neg(a: Mat) -> Mat:
    return tuple(vec_neg(r) for r in a)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def zero_mat(rows: int, cols: int) -> Mat:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def denominator_lcm(values: Iterable[Number]) -> int:
    """lcm of denominators of a stream of exact numbers (1 for ints)."""
    out = 1
    for x in values:
        if isinstance(x, Fraction):
            out = out * x.denominator // math.gcd(out, x.denominator)
        elif not isinstance(x, int):
            raise TypeError(f"exact number expected, got {x!r}")
    return out


def scale_to_int_vec(v: Vec, scale: int) -> tuple:
    """Multiply an exact vector by `scale` and return machine ints.

    Raises if the result is not integral — callers pick `scale` with
    `denominator_lcm` so this never triggers in correct use.
    """
    out = []
    for x in v:
        y = x * scale
        if isinstance(y, Fraction):
            if y.denominator != 1:
                raise ValueError(f"scale {scale} does not clear {x}")
            y = y.numerator
        out.append(y)
    return tuple(out)


def mat_rank(rows: Sequence[Sequence[Number]]) -> int:
    """Rank of a small exact matrix by fraction-free Gaussian elimination."""
    work = [list(map(Fraction, r)) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(rank, len(work)) if work[r][col] != 0), None
        )
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col] / prow[col]
                work[r] = [a - f * b for a, b in zip(work[r], prow)]
        rank += 1
        if rank == len(work):
            break
    return rank


# --- JSON number codec ------------------------------------------------------
#
# Exact numbers serialize as int (when integral) or "p/q" strings; floats stay
# floats.  This keeps instance files readable and round-trip exact.

def encode_number(x: Number):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, float)):
        return x
    raise TypeError(f"cannot encode {x!r}")


def decode_number(raw, exact: bool = True) -> Number:
    if isinstance(raw, bool):
        raise ValueError(f"not a number: {raw!r}")
    if isinstance(raw, str):
        try:
            val = Fraction(raw)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"bad rational literal {raw!r}") from e
        return val if exact else float(val)
    if isinstance(raw, int):
        return Fraction(raw) if exact else float(raw)
    if isinstance(raw, float):
        return to_exact(raw) if exact else raw
    raise ValueError(f"not a number: {raw!r}")


def encode_vec(v: Vec) -> list:
    return [encode_number(x) for x in v]


def decode_vec(raw, exact: bool = True) -> Vec:
    if not isinstance(raw, (list, tuple)):
        raise ValueError(f"vector expected, got {raw!r}")
    return tuple(decode_number(x, exact) for x in raw)


def encode_mat(m: Mat) -> list:
    return [encode_vec(r) for r in m]


def decode_mat(raw, exact: bool = True) -> Mat:
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ValueError(f"matrix expected, got {raw!r}")
    rows = tuple(decode_vec(r, exact) for r in raw)
    if len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows
