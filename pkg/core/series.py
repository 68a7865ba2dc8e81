"""Truncated Laurent series in ``t`` with Laurent-polynomial coefficients.

A :class:`TSeries` is dense in ``t`` and sparse in the auxiliary variables
``x`` (and optionally ``y``).  Every series carries its guaranteed order
``N``: coefficients of ``t^n`` are exact for ``n <= N`` and unknown beyond.
``order=None`` marks an exact series (a Laurent polynomial in ``t``).
Arithmetic propagates orders through the usual truncation algebra, and an
operation that cannot honour the order it is asked for raises instead of
silently returning fewer terms.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from core.exceptions import (
    ContractViolation,
    NonInvertibleError,
    NonSimpleRootError,
    SubstitutionOrderError,
    TruncationOrderError,
)
from core.numerics import format_rational, parse_rational

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]
VARIABLE_NAMES = ("x", "y")


def _shift_exponents(nvars: int) -> Callable[[Exponent, Exponent], Exponent]:
    if nvars == 1:
        return lambda a, b: (a[0] + b[0],)
    return lambda a, b: (a[0] + b[0], a[1] + b[1])


def _min_order(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentPoly:
    """Laurent polynomial in ``x`` (nvars=1) or ``x, y`` (nvars=2) over the rationals."""

    __slots__ = ("_terms", "nvars")

    def __init__(self, terms: Optional[Mapping] = None, nvars: int = 1):
        if nvars not in (1, 2):
            raise ContractViolation(f"only one or two auxiliary variables are supported, got {nvars}")
        clean: Dict[Exponent, Fraction] = {}
        for exponent, value in (terms or {}).items():
            key = (exponent,) if isinstance(exponent, int) else tuple(exponent)
            if len(key) != nvars:
                raise ContractViolation(f"exponent {key} does not match {nvars} variable(s)")
            clean[key] = clean.get(key, 0) + Fraction(value)
        self._terms = {key: value for key, value in clean.items() if value}
        self.nvars = nvars

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Fraction], nvars: int) -> "LaurentPoly":
        poly = cls.__new__(cls)
        poly._terms = {key: value for key, value in terms.items() if value}
        poly.nvars = nvars
        return poly

    # construction

    @classmethod
    def zero(cls, nvars: int = 1) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: int = 1) -> "LaurentPoly":
        return cls._raw({(0,) * nvars: Fraction(value)}, nvars)

    @classmethod
    def one(cls, nvars: int = 1) -> "LaurentPoly":
        return cls.constant(1, nvars)

    @classmethod
    def monomial(cls, value: Scalar, exponent: Exponent) -> "LaurentPoly":
        exponent = tuple(exponent)
        return cls._raw({exponent: Fraction(value)}, len(exponent))

    @classmethod
    def variable(cls, index: int = 0, nvars: int = 1, power: int = 1) -> "LaurentPoly":
        exponent = [0] * nvars
        exponent[index] = power
        return cls._raw({tuple(exponent): Fraction(1)}, nvars)

    # inspection

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * self.nvars}

    def coefficient(self, exponent: Union[int, Exponent]) -> Fraction:
        key = (exponent,) if isinstance(exponent, int) else tuple(exponent)
        return self._terms.get(key, Fraction(0))

    def bounds(self, var: int = 0) -> Optional[Tuple[int, int]]:
        if not self._terms:
            return None
        exponents = [key[var] for key in self._terms]
        return min(exponents), max(exponents)

    # ring operations

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ContractViolation("incompatible variable sets")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms.get(key, 0) + value
        return LaurentPoly._raw(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({key: -value for key, value in self._terms.items()}, self.nvars)

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def scale(self, factor: Scalar) -> "LaurentPoly":
        factor = Fraction(factor)
        return LaurentPoly._raw({key: value * factor for key, value in self._terms.items()}, self.nvars)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        shift = _shift_exponents(self.nvars)
        terms: Dict[Exponent, Fraction] = {}
        for ka, va in self._terms.items():
            for kb, vb in other._terms.items():
                key = shift(ka, kb)
                terms[key] = terms.get(key, 0) + va * vb
        return LaurentPoly._raw(terms, self.nvars)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        if not self.is_monomial:
            raise NonInvertibleError(f"only monomials are units among Laurent polynomials, got {self}")
        ((key, value),) = self._terms.items()
        return LaurentPoly._raw({tuple(-e for e in key): 1 / value}, self.nvars)

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            return self.inverse() ** (-power)
        result = LaurentPoly.one(self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    # exponent manipulations

    def shift(self, var: int, amount: int) -> "LaurentPoly":
        terms = {}
        for key, value in self._terms.items():
            moved = list(key)
            moved[var] += amount
            terms[tuple(moved)] = value
        return LaurentPoly._raw(terms, self.nvars)

    def mirror(self, var: int = 0) -> "LaurentPoly":
        """Replace the variable ``var`` by its inverse."""
        terms = {}
        for key, value in self._terms.items():
            moved = list(key)
            moved[var] = -moved[var]
            terms[tuple(moved)] = value
        return LaurentPoly._raw(terms, self.nvars)

    def filter(self, keep: Callable[[Exponent], bool]) -> "LaurentPoly":
        return LaurentPoly._raw({key: value for key, value in self._terms.items() if keep(key)}, self.nvars)

    def positive_part(self, var: int = 0) -> "LaurentPoly":
        """Monomials whose exponent in ``var`` is >= 0 (exponent 0 included)."""
        return self.filter(lambda key: key[var] >= 0)

    def negative_part(self, var: int = 0) -> "LaurentPoly":
        return self.filter(lambda key: key[var] < 0)

    def section(self, var: int, exponent: int) -> "LaurentPoly":
        """Coefficient of ``var**exponent`` as a polynomial in the remaining variable."""
        if self.nvars != 2:
            raise ContractViolation("section needs a bivariate polynomial")
        other = 1 - var
        return LaurentPoly._raw(
            {(key[other],): value for key, value in self._terms.items() if key[var] == exponent}, 1
        )

    def embed(self, position: int) -> "LaurentPoly":
        """View a univariate polynomial as bivariate, its variable sitting at ``position``."""
        if self.nvars != 1:
            raise ContractViolation("embed needs a univariate polynomial")
        if position == 0:
            return LaurentPoly._raw({(key[0], 0): value for key, value in self._terms.items()}, 2)
        return LaurentPoly._raw({(0, key[0]): value for key, value in self._terms.items()}, 2)

    # text and transfer forms

    def _monomial_text(self, key: Exponent) -> str:
        parts = []
        for name, exponent in zip(VARIABLE_NAMES, key):
            if exponent == 1:
                parts.append(name)
            elif exponent:
                parts.append(f"{name}^{exponent}")
        return "*".join(parts)

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for key, value in sorted(self._terms.items(), reverse=True):
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            body = self._monomial_text(key)
            if not body:
                text = format_rational(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{format_rational(magnitude)}*{body}"
            pieces.append(f"{sign} {text}")
        joined = " ".join(pieces)
        return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r}, nvars={self.nvars})"

    def to_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [[list(key), format_rational(value)] for key, value in self.items()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "LaurentPoly":
        nvars = int(data["nvars"])
        return cls({tuple(key): parse_rational(value) for key, value in data["terms"]}, nvars)


Coefficient = Union["TSeries", LaurentPoly, int, Fraction]


class TSeries:
    """Laurent series in ``t`` truncated at a guaranteed order."""

    __slots__ = ("valuation", "_coeffs", "order", "nvars")

    def __init__(
            self,
            coefficients: Sequence[LaurentPoly] = (),
            valuation: int = 0,
            order: Optional[int] = None,
            nvars: int = 1,
    ):
        coeffs = list(coefficients)
        for poly in coeffs:
            if poly.nvars != nvars:
                raise ContractViolation("coefficient variable set does not match the series")
        if order is not None:
            coeffs = coeffs[:max(order - valuation + 1, 0)]
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        end = len(coeffs)
        while end > start and not coeffs[end - 1]:
            end -= 1
        coeffs = coeffs[start:end]
        if coeffs:
            valuation += start
        else:
            valuation = order + 1 if order is not None else 0
        self.valuation = valuation
        self._coeffs = coeffs
        self.order = order
        self.nvars = nvars

    # construction

    @classmethod
    def zero(cls, nvars: int = 1, order: Optional[int] = None) -> "TSeries":
        return cls((), 0, order, nvars)

    @classmethod
    def constant(cls, value: Union[LaurentPoly, Scalar], nvars: int = 1, order: Optional[int] = None) -> "TSeries":
        if not isinstance(value, LaurentPoly):
            value = LaurentPoly.constant(value, nvars)
        return cls([value], 0, order, value.nvars)

    @classmethod
    def one(cls, nvars: int = 1) -> "TSeries":
        return cls.constant(1, nvars)

    @classmethod
    def t(cls, nvars: int = 1, power: int = 1) -> "TSeries":
        return cls([LaurentPoly.one(nvars)], power, None, nvars)

    @classmethod
    def variable(cls, index: int = 0, nvars: int = 1) -> "TSeries":
        return cls.constant(LaurentPoly.variable(index, nvars))

    @classmethod
    def from_terms(
            cls, terms: Mapping[Tuple[int, Union[int, Exponent]], Scalar], nvars: int = 1, order: Optional[int] = None
    ) -> "TSeries":
        """Build from ``{(n, exponent): coefficient}``."""
        buckets: Dict[int, Dict] = {}
        for (n, exponent), value in terms.items():
            buckets.setdefault(n, {})[exponent] = value
        return cls._from_mapping({n: LaurentPoly(bucket, nvars) for n, bucket in buckets.items()}, order, nvars)

    @classmethod
    def _from_mapping(cls, mapping: Mapping[int, LaurentPoly], order: Optional[int], nvars: int) -> "TSeries":
        mapping = {n: poly for n, poly in mapping.items() if poly and (order is None or n <= order)}
        if not mapping:
            return cls((), 0, order, nvars)
        low, high = min(mapping), max(mapping)
        zero = LaurentPoly.zero(nvars)
        return cls([mapping.get(n, zero) for n in range(low, high + 1)], low, order, nvars)

    def _coerce(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            if other.nvars != self.nvars:
                raise ContractViolation("series over different variable sets")
            return other
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ContractViolation("series over different variable sets")
            return TSeries.constant(other)
        if isinstance(other, (int, Fraction)):
            return TSeries.constant(other, self.nvars)
        return NotImplemented

    # inspection

    @property
    def is_exact(self) -> bool:
        return self.order is None

    def items(self) -> Iterator[Tuple[int, LaurentPoly]]:
        for index, poly in enumerate(self._coeffs):
            if poly:
                yield self.valuation + index, poly

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self._coeffs

    @property
    def last(self) -> Optional[int]:
        """Largest t-exponent with a stored nonzero coefficient."""
        if not self._coeffs:
            return None
        return self.valuation + len(self._coeffs) - 1

    def coefficient(self, n: int) -> LaurentPoly:
        if self.order is not None and n > self.order:
            raise TruncationOrderError(f"t^{n} is beyond the guaranteed order {self.order}")
        index = n - self.valuation
        if 0 <= index < len(self._coeffs):
            return self._coeffs[index]
        return LaurentPoly.zero(self.nvars)

    def coeff(self, n: int, exponent: Union[int, Exponent] = 0) -> Fraction:
        if isinstance(exponent, int):
            exponent = (exponent,) + (0,) * (self.nvars - 1)
        return self.coefficient(n).coefficient(exponent)

    def x_bounds(self, var: int = 0) -> Optional[Tuple[int, int]]:
        bounds = [poly.bounds(var) for _, poly in self.items()]
        if not bounds:
            return None
        return min(b[0] for b in bounds), max(b[1] for b in bounds)

    # arithmetic

    def __add__(self, other) -> "TSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mapping: Dict[int, LaurentPoly] = dict(self.items())
        for n, poly in other.items():
            mapping[n] = mapping[n] + poly if n in mapping else poly
        return TSeries._from_mapping(mapping, _min_order(self.order, other.order), self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "TSeries":
        return TSeries([-poly for poly in self._coeffs], self.valuation, self.order, self.nvars)

    def __sub__(self, other) -> "TSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "TSeries":
        return (-self) + other

    def __mul__(self, other) -> "TSeries":
        if isinstance(other, (int, Fraction)):
            return TSeries([poly.scale(other) for poly in self._coeffs], self.valuation, self.order, self.nvars)
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ContractViolation("series over different variable sets")
            return TSeries([poly * other for poly in self._coeffs], self.valuation, self.order, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if (self.is_exact and self.is_zero()) or (other.is_exact and other.is_zero()):
            return TSeries.zero(self.nvars)
        candidates = []
        if self.order is not None:
            candidates.append(self.order + other.valuation)
        if other.order is not None:
            candidates.append(other.order + self.valuation)
        order = min(candidates) if candidates else None
        shift = _shift_exponents(self.nvars)
        buckets: Dict[int, Dict[Exponent, Fraction]] = {}
        for na, pa in self.items():
            if order is not None and na + other.valuation > order:
                break
            for nb, pb in other.items():
                n = na + nb
                if order is not None and n > order:
                    break
                bucket = buckets.setdefault(n, {})
                for ka, va in pa._terms.items():
                    for kb, vb in pb._terms.items():
                        key = shift(ka, kb)
                        bucket[key] = bucket.get(key, 0) + va * vb
        mapping = {n: LaurentPoly._raw(bucket, self.nvars) for n, bucket in buckets.items()}
        return TSeries._from_mapping(mapping, order, self.nvars)

    __rmul__ = __mul__

    def inverse(self, order: Optional[int] = None) -> "TSeries":
        """Multiplicative inverse; the leading coefficient must be a monomial."""
        if not self._coeffs:
            raise NonInvertibleError("the series is zero to its known order")
        lead = self._coeffs[0]
        if not lead.is_monomial:
            raise NonInvertibleError(f"leading coefficient {lead} is not a unit")
        v = self.valuation
        inv_lead = lead.inverse()
        if self.is_exact and len(self._coeffs) == 1:
            return TSeries([inv_lead], -v, order, self.nvars)
        natural = None if self.order is None else self.order - 2 * v
        target = _min_order(natural, order)
        if target is None:
            raise TruncationOrderError("inverting an exact series with several terms needs an explicit order")
        coeffs = self._coeffs
        zero = LaurentPoly.zero(self.nvars)
        inverse_coeffs: List[LaurentPoly] = []
        for k in range(target + v + 1):
            if k == 0:
                inverse_coeffs.append(inv_lead)
                continue
            acc = zero
            for j in range(1, min(k, len(coeffs) - 1) + 1):
                if coeffs[j]:
                    acc = acc + coeffs[j] * inverse_coeffs[k - j]
            inverse_coeffs.append(-(acc * inv_lead))
        return TSeries(inverse_coeffs, -v, target, self.nvars)

    def divide(self, other: Coefficient, order: Optional[int] = None) -> "TSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot divide by a non-series value")
        needed = order
        if self.order is not None and other._coeffs:
            needed = _min_order(needed, self.order - other.valuation - self.valuation)
        if other.is_exact and len(other._coeffs) == 1:
            needed = None
        return (self * other.inverse(order=needed)).truncate(order)

    def __truediv__(self, other) -> "TSeries":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self.divide(other)

    def __pow__(self, power: int) -> "TSeries":
        if power < 0:
            return self.inverse() ** (-power)
        result = TSeries.one(self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def shift(self, amount: int) -> "TSeries":
        """Multiply by ``t**amount``."""
        order = None if self.order is None else self.order + amount
        return TSeries(self._coeffs, self.valuation + amount, order, self.nvars)

    def truncate(self, order: Optional[int]) -> "TSeries":
        new_order = _min_order(self.order, order)
        return TSeries(self._coeffs, self.valuation, new_order, self.nvars)

    def as_exact(self) -> "TSeries":
        """Forget the truncation: the known part, read as a polynomial in t."""
        return TSeries(self._coeffs, self.valuation, None, self.nvars)

    def map_coefficients(self, transform: Callable[[LaurentPoly], LaurentPoly], nvars: Optional[int] = None) -> "TSeries":
        nvars = self.nvars if nvars is None else nvars
        mapping = {n: transform(poly) for n, poly in self.items()}
        return TSeries._from_mapping(mapping, self.order, nvars)

    def mirror(self, var: int = 0) -> "TSeries":
        return self.map_coefficients(lambda poly: poly.mirror(var))

    def section(self, var: int, exponent: int) -> "TSeries":
        return self.map_coefficients(lambda poly: poly.section(var, exponent), nvars=1)

    def embed(self, position: int) -> "TSeries":
        return self.map_coefficients(lambda poly: poly.embed(position), nvars=2)

    def filter(self, keep: Callable[[Exponent], bool]) -> "TSeries":
        return self.map_coefficients(lambda poly: poly.filter(keep))

    def agrees_with(self, other: Coefficient) -> bool:
        return (self - other).is_zero()

    # text and transfer forms

    def render(self) -> str:
        pieces: List[str] = []
        for n, poly in self.items():
            if n == 0:
                tpart = ""
            elif n == 1:
                tpart = "t"
            else:
                tpart = f"t^{n}"
            if poly.is_constant:
                value = poly.coefficient((0,) * self.nvars)
                magnitude = format_rational(abs(value))
                sign = "-" if value < 0 else "+"
                if not tpart:
                    body = magnitude
                elif abs(value) == 1:
                    body = tpart
                else:
                    body = f"{magnitude}*{tpart}"
            else:
                sign = "+"
                body = f"({poly.render()})" + (f"*{tpart}" if tpart else "")
            pieces.append(f"{sign} {body}")
        if self.order is not None:
            pieces.append(f"+ O(t^{self.order + 1})")
        if not pieces:
            return "0"
        joined = " ".join(pieces)
        return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"TSeries({self.render()!r})"

    def to_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "order": self.order,
            "terms": {str(n): poly.to_dict()["terms"] for n, poly in self.items()},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "TSeries":
        nvars = int(data["nvars"])
        mapping = {
            int(n): LaurentPoly({tuple(key): parse_rational(value) for key, value in terms}, nvars)
            for n, terms in data["terms"].items()
        }
        return cls._from_mapping(mapping, data.get("order"), nvars)


def _as_series(value: Coefficient, nvars: int) -> TSeries:
    if isinstance(value, TSeries):
        return value
    return TSeries.constant(value, nvars)


def coeff(s: TSeries, n: int, exponent: Union[int, Exponent] = 0) -> Fraction:
    """Exact coefficient of ``x^exponent t^n``."""
    return s.coeff(n, exponent)


def polyval(coefficients: Sequence[Coefficient], u: TSeries, order: Optional[int] = None) -> TSeries:
    """Horner evaluation of ``sum c_j u^j``, truncated at ``order`` when given."""
    nvars = u.nvars
    coeffs = [_as_series(c, nvars) for c in coefficients]
    if not coeffs:
        return TSeries.zero(nvars, order)
    acc = coeffs[-1].truncate(order)
    for c in reversed(coeffs[:-1]):
        acc = (acc * u + c).truncate(order)
    return acc


def newton_root(coefficients: Sequence[Coefficient], u0: LaurentPoly, order: Optional[int] = None) -> TSeries:
    """Series root of ``P(u) = sum_j coefficients[j] u^j`` lifting the simple root ``u0`` at t = 0.

    Newton iteration doubles the number of correct terms at each step.
    The guaranteed order is the smallest of ``order`` and the coefficients' orders.
    """
    nvars = u0.nvars
    coeffs = [_as_series(c, nvars) for c in coefficients]
    target = order
    for c in coeffs:
        target = _min_order(target, c.order)
    if target is None:
        raise TruncationOrderError("newton_root needs an order when every coefficient is exact")
    derivative = [c * j for j, c in enumerate(coeffs)][1:]
    approximation = TSeries.constant(u0)
    residual = polyval(coeffs, approximation, 0)
    if not residual.is_zero():
        raise NonSimpleRootError(f"{u0} is not a root of the polynomial at t = 0")
    slope = polyval(derivative, approximation, 0)
    if slope.is_zero() or slope.valuation != 0 or not slope.coefficient(0).is_monomial:
        raise NonSimpleRootError(f"{u0} is not a simple root at t = 0")
    known = 0
    while known < target:
        known = min(2 * known + 1, target)
        residual = polyval(coeffs, approximation, known)
        slope = polyval(derivative, approximation, known)
        step = residual * slope.inverse(order=known)
        approximation = (approximation - step).truncate(known).as_exact()
        logger.debug(f"newton_root: lifted to order {known}")
    return approximation.truncate(target)


def sqrt_series(s: TSeries, order: Optional[int] = None) -> TSeries:
    """Square root with constant term 1 of a series whose constant term is 1."""
    one = LaurentPoly.one(s.nvars)
    if s.is_zero() or s.valuation != 0 or s.coefficient(0) != one:
        raise NonInvertibleError("sqrt_series needs valuation 0 and constant term 1")
    target = _min_order(s.order, order)
    if target is None:
        if s.last == 0:
            return TSeries.one(s.nvars)
        raise TruncationOrderError("the square root of an exact series needs an explicit order")
    return newton_root([-s, 0, 1], one, target)


@dataclass(frozen=True)
class DegreeBound:
    """Linear bounds ``lower(n) <= e <= upper(n)`` on the x-exponents ``e`` found at ``t^n``."""

    upper_slope: Fraction = Fraction(1)
    upper_offset: Fraction = Fraction(1)
    lower_slope: Fraction = Fraction(0)
    lower_offset: Fraction = Fraction(0)

    def upper(self, n: int) -> Fraction:
        return Fraction(self.upper_slope) * n + Fraction(self.upper_offset)

    def lower(self, n: int) -> Fraction:
        return Fraction(self.lower_slope) * n + Fraction(self.lower_offset)

    def check(self, s: TSeries) -> None:
        for n, poly in s.items():
            low, high = poly.bounds()
            if high > self.upper(n) or low < self.lower(n):
                raise ContractViolation(f"x-exponents [{low}, {high}] at t^{n} break the degree bound")


# walk generating functions: 0 <= e <= n + 1 at t^n
WALK_DEGREE_BOUND = DegreeBound()


def substitute(s: TSeries, target: TSeries, bound: DegreeBound = WALK_DEGREE_BOUND) -> TSeries:
    """Replace ``x`` by ``target`` in a univariate series.

    The unknown tail of ``s`` (beyond its order) is controlled by ``bound``;
    the result's order is the largest one the tail cannot reach, and the
    order bookkeeping of the arithmetic handles the known terms.
    """
    if s.nvars != 1 or target.nvars != 1:
        raise ContractViolation("substitute works on univariate series")
    bound.check(s)
    w = target.valuation
    tail: Optional[int] = None
    if s.order is not None:
        first = s.order + 1
        candidates = []
        for slope, offset in ((bound.upper_slope, bound.upper_offset), (bound.lower_slope, bound.lower_offset)):
            rate = 1 + Fraction(slope) * w
            if rate <= 0:
                raise SubstitutionOrderError(
                    f"substituting a series of valuation {w} does not converge under the degree bound"
                )
            candidates.append(rate * first + Fraction(offset) * w)
        tail = math.ceil(min(candidates)) - 1

    columns: Dict[int, Dict[int, Fraction]] = {}
    for n, poly in s.items():
        for (e,), value in poly.items():
            columns.setdefault(e, {})[n] = value
    power_cap = None
    if tail is not None and w >= 0 and not s.is_zero():
        power_cap = tail - s.valuation

    result = TSeries.zero(1)
    if columns and min(columns) < 0:
        if target.is_zero():
            raise NonInvertibleError("negative powers of a zero target")
        inverse = target.inverse(order=power_cap)
        power = TSeries.one(1)
        for e in range(-1, min(columns) - 1, -1):
            power = (power * inverse).truncate(power_cap)
            if e in columns:
                column = TSeries.from_terms({(n, 0): value for n, value in columns[e].items()})
                result = result + column * power
    power = TSeries.one(1)
    for e in range(0, max(columns, default=-1) + 1):
        if e:
            power = (power * target).truncate(power_cap)
        if e in columns:
            column = TSeries.from_terms({(n, 0): value for n, value in columns[e].items()})
            result = result + column * power
    result = result.truncate(tail)
    if result.order is not None and result.order < 0:
        raise SubstitutionOrderError(f"substitution leaves a negative guaranteed order {result.order}")
    logger.debug(f"substitute: target valuation {w}, result order {result.order}")
    return result


def mirror(s: TSeries) -> TSeries:
    """x -> 1/x coefficientwise."""
    return s.mirror(0)


def positive_part(s: TSeries) -> TSeries:
    """Keep the monomials ``x^i`` with ``i >= 0`` (exponent 0 included)."""
    if s.nvars != 1:
        raise ContractViolation("positive_part is defined for series in x alone")
    if not s.is_zero() and s.valuation < 0:
        raise ContractViolation("positive_part needs a power series in t")
    return s.map_coefficients(lambda poly: poly.positive_part(0))


def constant_term_xbar(s: TSeries) -> TSeries:
    """Exponent-0 part of a series whose coefficients are polynomials in 1/x."""
    if s.nvars != 1:
        raise ContractViolation("constant_term_xbar is defined for series in x alone")
    for n, poly in s.items():
        if poly.bounds()[1] > 0:
            raise ContractViolation(f"positive x-exponent at t^{n}")
    return s.map_coefficients(lambda poly: poly.filter(lambda key: key[0] == 0))
