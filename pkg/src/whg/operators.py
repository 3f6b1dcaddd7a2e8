"""Sparse square matrices with exact :class:`~whg.exactnum.Radical` entries."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .exactnum import ONE, ZERO, Radical

__all__ = ["SparseOperator", "commutator", "apply", "DimensionMismatch"]


class DimensionMismatch(ValueError):
    pass


def _radical(x) -> Radical:
    return x if isinstance(x, Radical) else Radical(x)


class SparseOperator:
    """Immutable ``dim x dim`` matrix stored as ``{(row, col): value}``.

    Zero entries are never stored, so two operators are equal exactly when
    their entry maps are equal.
    """

    __slots__ = ("dim", "_entries", "_rows")

    def __init__(self, dim: int, entries: Mapping | Iterable | None = None):
        if dim < 0:
            raise ValueError("negative dimension")
        self.dim = dim
        clean: dict[tuple[int, int], Radical] = {}
        if entries:
            items = entries.items() if hasattr(entries, "items") else entries
            for (r, c), v in items:
                if not (0 <= r < dim and 0 <= c < dim):
                    raise IndexError(f"entry ({r}, {c}) outside dimension {dim}")
                v = _radical(v)
                if v:
                    clean[(r, c)] = v
        self._entries = clean
        self._rows = None

    @classmethod
    def _wrap(cls, dim: int, entries: dict) -> "SparseOperator":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._entries = entries
        obj._rows = None
        return obj

    @classmethod
    def identity(cls, dim: int) -> "SparseOperator":
        return cls._wrap(dim, {(i, i): ONE for i in range(dim)})

    @classmethod
    def zeros(cls, dim: int) -> "SparseOperator":
        return cls._wrap(dim, {})

    @classmethod
    def diagonal(cls, values: Iterable) -> "SparseOperator":
        values = [_radical(v) for v in values]
        return cls._wrap(len(values), {(i, i): v for i, v in enumerate(values) if v})

    # -- access -----------------------------------------------------------

    @property
    def entries(self) -> Mapping[tuple[int, int], Radical]:
        return MappingProxyType(self._entries)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def __getitem__(self, key: tuple[int, int]) -> Radical:
        return self._entries.get(key, ZERO)

    def is_zero(self) -> bool:
        return not self._entries

    def _row_index(self) -> dict[int, list[tuple[int, Radical]]]:
        if self._rows is None:
            rows: dict[int, list] = defaultdict(list)
            for (r, c), v in self._entries.items():
                rows[r].append((c, v))
            self._rows = dict(rows)
        return self._rows

    # -- algebra ----------------------------------------------------------

    def _check(self, other: "SparseOperator") -> None:
        if not isinstance(other, SparseOperator):
            raise TypeError(f"expected SparseOperator, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def _combine(self, other: "SparseOperator", sign: int) -> "SparseOperator":
        self._check(other)
        out = dict(self._entries)
        for key, v in other._entries.items():
            cur = out.get(key)
            new = (v if sign > 0 else -v) if cur is None else (cur + v if sign > 0 else cur - v)
            if new:
                out[key] = new
            elif cur is not None:
                del out[key]
        return SparseOperator._wrap(self.dim, out)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self._combine(other, -1)

    def __neg__(self) -> "SparseOperator":
        return SparseOperator._wrap(self.dim, {k: -v for k, v in self._entries.items()})

    def __mul__(self, scalar) -> "SparseOperator":
        if isinstance(scalar, SparseOperator):
            return NotImplemented
        if not isinstance(scalar, (Radical, int, Fraction)):
            return NotImplemented
        if not scalar:
            return SparseOperator.zeros(self.dim)
        return SparseOperator._wrap(self.dim, {k: v * scalar for k, v in self._entries.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._check(other)
        rows = other._row_index()
        acc: dict[tuple[int, int], Radical] = {}
        for (i, k), a in self._entries.items():
            for j, b in rows.get(k, ()):
                key = (i, j)
                prod = a * b
                cur = acc.get(key)
                acc[key] = prod if cur is None else cur + prod
        return SparseOperator._wrap(self.dim, {k: v for k, v in acc.items() if v})

    def power(self, n: int) -> "SparseOperator":
        if n < 0:
            raise ValueError("negative power")
        out = SparseOperator.identity(self.dim)
        for _ in range(n):
            out = self @ out
            if out.is_zero():
                break
        return out

    def transpose(self) -> "SparseOperator":
        return SparseOperator._wrap(self.dim, {(c, r): v for (r, c), v in self._entries.items()})

    def trace(self) -> Radical:
        total = ZERO
        for (r, c), v in self._entries.items():
            if r == c:
                total = total + v
        return total

    def apply(self, vector: Mapping[int, object]) -> dict[int, object]:
        """Matrix-vector product on a sparse vector ``{index: value}``.

        Vector values may live in any module over the radicals (for example
        symbolic coefficients); products are formed as ``entry * value``.
        """
        by_col: dict[int, list] = defaultdict(list)
        for (r, c), v in self._entries.items():
            by_col[c].append((r, v))
        out: dict[int, object] = {}
        for c, x in vector.items():
            for r, a in by_col.get(c, ()):
                term = a * x
                out[r] = term if r not in out else out[r] + term
        return {r: v for r, v in out.items() if v}

    def max_abs_entry(self) -> tuple[tuple[int, int], Radical] | None:
        """Entry of largest magnitude (first in key order on ties), or None."""
        best = None
        for key in sorted(self._entries):
            mag = abs(self._entries[key])
            if best is None or mag > best[1]:
                best = (key, mag)
        return best

    def restrict(self, keep: Callable[[int], bool]) -> "SparseOperator":
        """Zero every entry whose row or column fails ``keep``."""
        return SparseOperator._wrap(
            self.dim, {(r, c): v for (r, c), v in self._entries.items() if keep(r) and keep(c)}
        )

    def dump(self, label: Callable[[int], object] = str) -> list[str]:
        """One ``row col value-text`` line per nonzero entry, in key order."""
        lines = []
        for r, c in sorted(self._entries):
            lines.append(f"{_fmt(label(r))} {_fmt(label(c))} {self._entries[(r, c)].to_text()}")
        return lines

    def to_dense(self) -> list[list[Radical]]:
        return [[self[(r, c)] for c in range(self.dim)] for r in range(self.dim)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return self.dim == other.dim and self._entries == other._entries

    def __hash__(self):
        return hash((self.dim, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"SparseOperator(dim={self.dim}, nnz={self.nnz})"


def _fmt(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(str(x) for x in label) + ")"
    return str(label)


def commutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    """``a @ b - b @ a``."""
    return a @ b - b @ a


def apply(op: SparseOperator, vector: Mapping[int, object]) -> dict[int, object]:
    return op.apply(vector)
