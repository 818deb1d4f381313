"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple

Exponents = Tuple[int, ...]

# exponents must fit a signed machine word
MAX_EXPONENT = 2**63 - 1


class VariableMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _check_exponents(e: Exponents) -> Exponents:
    for k in e:
        if k > MAX_EXPONENT:
            raise OverflowError(f"exponent {k} exceeds machine word")
        if k < 0:
            raise ValueError("negative exponent")
    return e


def grlex_key(e: Exponents):
    return (sum(e), e)


class MultiPoly:
    """An immutable polynomial over Q in a fixed, ordered list of variables.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients, so two
    polynomials over the same variables are equal iff their term maps are.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponents, object] = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable in {self.variables}")
        n = len(self.variables)
        clean: Dict[Exponents, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            c = _as_fraction(c)
            if c:
                clean[_check_exponents(e)] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, variables, terms):
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def constant(cls, c, variables) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatch(f"unknown variable {name!r}")
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], variables, coeff=1) -> "MultiPoly":
        variables = tuple(variables)
        unknown = set(exps) - set(variables)
        if unknown:
            raise VariableMismatch(f"unknown variables {sorted(unknown)}")
        e = tuple(exps.get(v, 0) for v in variables)
        return cls(variables, {e: coeff})

    # -- basic queries ----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise VariableMismatch(f"unknown variable {name!r}") from None

    def degree(self, name: str = None) -> int:
        """Degree in ``name`` (total degree if omitted); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.index(name)
        return max(e[i] for e in self.terms)

    def min_degree(self, name: str = None) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no minimal degree")
        if name is None:
            return min(sum(e) for e in self.terms)
        i = self.index(name)
        return min(e[i] for e in self.terms)

    def involves(self, name: str) -> bool:
        i = self.index(name)
        return any(e[i] for e in self.terms)

    def used_variables(self) -> Tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    # -- ring structure ---------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise VariableMismatch(f"{self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return MultiPoly.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        for e in out:
            _check_exponents(e)
        return MultiPoly._raw(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        c = _as_fraction(c)
        if not c:
            return MultiPoly.zero(self.variables)
        return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- division ---------------------------------------------------------

    def divide_exact(self, divisor: "MultiPoly") -> "MultiPoly":
        """Return ``r`` with ``divisor * r == self``; raise NotDivisible otherwise."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_constant():
            return self.scale(1 / divisor.constant_term())
        le, lc = divisor.leading_term()
        rem = dict(self.terms)
        quot: Dict[Exponents, Fraction] = {}
        while rem:
            e = max(rem, key=grlex_key)
            if any(a < b for a, b in zip(e, le)):
                raise NotDivisible(f"{divisor} does not divide {self}")
            qe = tuple(a - b for a, b in zip(e, le))
            qc = rem[e] / lc
            quot[qe] = qc
            for de, dc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(qe, de))
                s = rem.get(t, 0) - qc * dc
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return MultiPoly._raw(self.variables, quot)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.divide_exact(self)
        except NotDivisible:
            return False
        return True

    # -- calculus and substitution ---------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        i = self.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MultiPoly._raw(self.variables, out)

    def coefficients_in(self, name: str) -> Dict[int, "MultiPoly"]:
        """Split as sum_k c_k * name^k; the c_k live in the same ring and omit ``name``."""
        i = self.index(name)
        parts: Dict[int, Dict[Exponents, Fraction]] = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(e[i], {})[ne] = c
        return {k: MultiPoly._raw(self.variables, t) for k, t in parts.items()}

    @classmethod
    def from_coefficients(cls, name: str, coeffs: Mapping[int, "MultiPoly"], variables) -> "MultiPoly":
        x = cls.var(name, variables)
        out = cls.zero(variables)
        for k, c in coeffs.items():
            out = out + c * x**k
        return out

    def substitute(self, assignment: Mapping[str, object], variables=None) -> "MultiPoly":
        """Compose with ``assignment`` (variable -> MultiPoly or rational).

        Every variable of ``self`` must be assigned unless ``variables`` is None
        and the variable keeps its name in the target ring; the targets must share
        one variable list, which becomes the result's ring.
        """
        targets = [a for a in assignment.values() if isinstance(a, MultiPoly)]
        if variables is None:
            if targets:
                variables = targets[0].variables
            else:
                variables = self.variables
        variables = tuple(variables)
        for a in targets:
            if a.variables != variables:
                raise VariableMismatch("assignment targets use different variable lists")
        images = []
        for v in self.variables:
            if v in assignment:
                a = assignment[v]
                images.append(a if isinstance(a, MultiPoly) else MultiPoly.constant(a, variables))
            elif v in variables:
                images.append(MultiPoly.var(v, variables))
            elif self.involves(v):
                raise VariableMismatch(f"no assignment for variable {v!r}")
            else:
                images.append(None)
        powers = [dict() for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        out = MultiPoly.zero(variables)
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, variables)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        """Evaluate at a full rational point."""
        missing = [v for v in self.used_variables() if v not in point]
        if missing:
            raise VariableMismatch(f"no value for {missing}")
        vals = [_as_fraction(point.get(v, 0)) for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x**k
            total += t
        return total

    def with_variables(self, variables) -> "MultiPoly":
        """Re-embed into a ring whose variables include every variable used here."""
        variables = tuple(variables)
        idx = []
        for i, v in enumerate(self.variables):
            if v in variables:
                idx.append((i, variables.index(v)))
            elif any(e[i] for e in self.terms):
                raise VariableMismatch(f"variable {v!r} missing from {variables}")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, j in idx:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return MultiPoly._raw(variables, out)

    # -- printing ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, variables={self.variables})"
