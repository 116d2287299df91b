"""Exact scalars over the rationals or a prime field.

A :class:`FieldCtx` fixes the ground field by its characteristic (0 for Q,
p for GF(p)).  Values are kept in a *raw* normalized form internally
(``Fraction`` for Q, an ``int`` in ``[0, p)`` for GF(p)) so that the
matrix layer can work on plain numpy arrays; :class:`Scalar` is the
user-facing immutable wrapper.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, MixedFieldContexts, ParseError

__all__ = ["FieldCtx", "Scalar", "field_arith", "QQ", "GF", "is_prime"]

MAX_CHARACTERISTIC = 2**31
# int64 matrix arithmetic stays exact while p**2 * (inner dimension) < 2**63
_INT64_PRIME_LIMIT = 2**20


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldCtx:
    characteristic: int

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or c < 0:
            raise ValueError(f"characteristic must be a non-negative int, got {c!r}")
        if c != 0 and (c > MAX_CHARACTERISTIC or not is_prime(c)):
            raise ValueError(f"characteristic must be 0 or a prime <= 2**31, got {c}")

    # -- construction -------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> FieldCtx:
        """Accepts ``q``/``Q``/``QQ`` or ``gf<p>``/``GF(p)``/``p``."""
        t = text.strip().lower().replace(" ", "")
        if t in ("q", "qq", "0", "rationals"):
            return cls(0)
        m = re.fullmatch(r"(?:gf|f)?\(?(\d+)\)?", t)
        if not m:
            raise ParseError(f"unknown field {text!r}")
        try:
            return cls(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def token(self) -> str:
        """Short form used on the command line and in documents."""
        return "q" if self.characteristic == 0 else f"gf{self.characteristic}"

    @property
    def size(self):
        return None if self.characteristic == 0 else self.characteristic

    @property
    def dtype(self):
        p = self.characteristic
        return np.int64 if 0 < p < _INT64_PRIME_LIMIT else object

    def __repr__(self):
        return f"FieldCtx({self.name})"

    # -- raw values ---------------------------------------------------

    def raw(self, value):
        """Normalize ``value`` (int, Fraction, str, Scalar) to raw form."""
        if isinstance(value, Scalar):
            if value.ctx != self:
                raise MixedFieldContexts(f"{value.ctx.name} value used in {self.name}")
            return value.value
        if isinstance(value, str):
            return self.parse_raw(value)
        if isinstance(value, (np.integer,)):
            value = int(value)
        p = self.characteristic
        if p == 0:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"cannot coerce {type(value).__name__} to Q exactly")
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise DivisionByZero(f"denominator of {value} vanishes in {self.name}")
            return value.numerator * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {type(value).__name__} to {self.name}")

    def __call__(self, value) -> Scalar:
        return Scalar(self, self.raw(value))

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def elements(self):
        """All field elements, GF(p) only."""
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return [Scalar(self, v) for v in range(self.characteristic)]

    # raw arithmetic, used by the array layer and the scalar wrapper

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self.name}")
        p = self.characteristic
        return 1 / a if p == 0 else pow(a, -1, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- text ---------------------------------------------------------

    def render(self, raw, document=False) -> str:
        if self.characteristic == 0:
            f = Fraction(raw)
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        return f"{raw} mod {self.characteristic}" if document else str(raw)

    def parse_raw(self, text: str):
        t = text.strip().replace(" ", "")
        m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?(?:mod(\d+))?", t)
        if not m:
            raise ParseError(f"not a scalar: {text!r}")
        num, den, mod = m.groups()
        if mod is not None and int(mod) != self.characteristic:
            raise MixedFieldContexts(f"scalar {text!r} is not in {self.name}")
        value = Fraction(int(num), int(den) if den else 1) if den != "0" else None
        if value is None:
            raise DivisionByZero(f"zero denominator in {text!r}")
        return self.raw(value)

    # -- arrays -------------------------------------------------------

    def array(self, rows) -> np.ndarray:
        """numpy array of raw values from a nested list of coercible values."""
        data = np.asarray(rows, dtype=object)
        flat = [self.raw(v) for v in data.reshape(-1)]
        out = np.empty(len(flat), dtype=self.dtype)
        out[:] = flat
        return out.reshape(data.shape)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        p = self.characteristic
        if p == 0:
            return arr
        if arr.dtype == object:
            return np.vectorize(lambda v: int(v) % p, otypes=[object])(arr)
        return arr % p

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0) if self.characteristic == 0 else 0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.raw(1)
        return out


QQ = FieldCtx(0)


def GF(p: int) -> FieldCtx:
    return FieldCtx(p)


class Scalar:
    """An immutable exact field element tied to a :class:`FieldCtx`."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "value", ctx.raw(value) if not _is_raw(ctx, value) else value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise MixedFieldContexts(f"{self.ctx.name} and {other.ctx.name} operands")
            return other.value
        if isinstance(other, (int, Fraction, np.integer)):
            return self.ctx.raw(other)
        return NotImplemented

    def _wrap(self, raw):
        return Scalar(self.ctx, raw)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.value))

    def __pos__(self):
        return self

    def inv(self) -> Scalar:
        return self._wrap(self.ctx.inv(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = self.ctx.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise MixedFieldContexts(f"comparing {self.ctx.name} with {other.ctx.name}")
            return self.value == other.value
        if isinstance(other, (int, Fraction, np.integer)):
            try:
                return self.value == self.ctx.raw(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.characteristic, self.value))

    def __bool__(self):
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return self.ctx.render(self.value)

    def to_document(self) -> str:
        return self.ctx.render(self.value, document=True)

    def __repr__(self):
        return f"Scalar({self}, {self.ctx.name})"


def _is_raw(ctx, value):
    if ctx.characteristic == 0:
        return type(value) is Fraction
    return type(value) is int and 0 <= value < ctx.characteristic


_OPS = {"add", "sub", "mul", "div", "neg", "inv", "eq"}


def field_arith(ctx: FieldCtx, op: str, x: Scalar, y: Scalar | None = None):
    """Apply a named field operation; ``eq`` returns a bool."""
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    for s in (x, y):
        if s is not None and s.ctx != ctx:
            raise MixedFieldContexts(f"{s.ctx.name} operand in {ctx.name} context")
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    if y is None:
        raise TypeError(f"{op} needs two operands")
    if op == "eq":
        return x == y
    return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}[op](y)
