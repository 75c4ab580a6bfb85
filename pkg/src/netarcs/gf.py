"""Exact arithmetic in GF(p^k).

Elements are integer codes: the residue polynomial c_0 + c_1 x + ... +
c_{k-1} x^{k-1} is stored as sum(c_i * p**i).  The code of the class of
``x`` is therefore ``p`` (for k > 1), and the prime subfield is
{0, 1, ..., p-1}.

Moduli for small fields come from a fixed table so that element codes
are reproducible; other sizes use the monic irreducible polynomial with
the least code (constant term first).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 2**20

# (p, k) -> coefficients, constant term first, monic.
MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (5, 2): (1, 1, 1),  # x^2 + x + 1
    (7, 2): (1, 0, 1),  # x^2 + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``(p, k)`` with ``q == p**k``; ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p) as coefficient tuples, constant term first ---


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _trim(a)
    return a


def _is_irreducible(mod: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    k = len(mod) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _pmod(mod, list(low) + [1], p):
                return False
    return True


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        cand = tuple(low) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldSpec:
    """The field GF(p^k) with a fixed modulus.

    Instances are cached per ``(p, k, modulus)``, so identity comparison
    is enough to decide whether two elements may be combined.
    """

    __slots__ = ("p", "k", "modulus", "q", "_digits", "_exp", "_log", "__weakref__")

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.q = p**k
        self._digits: list[tuple[int, ...]] | None = None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_make, (self.p, self.k, self.modulus))

    @property
    def descriptor(self) -> str:
        """``"p^k/c0,c1,...,ck"`` with the modulus coefficients, constant first."""
        return f"{self.p}^{self.k}/" + ",".join(map(str, self.modulus))

    # --- element construction ---

    def __call__(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    def from_int(self, n: int) -> FieldElement:
        """The element n*1 of the prime subfield."""
        return FieldElement(self, n % self.p)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of x modulo the defining polynomial."""
        if self.k == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self) -> Iterator[FieldElement]:
        for c in range(self.q):
            yield FieldElement(self, c)

    # --- code-level arithmetic (also used by the search tables) ---

    def digits(self, a: int) -> tuple[int, ...]:
        if self._digits is None and self.q <= 4096:
            p, k = self.p, self.k
            self._digits = [tuple((c // p**i) % p for i in range(k)) for c in range(self.q)]
        if self._digits is not None:
            return self._digits[a]
        return tuple((a // self.p**i) % self.p for i in range(self.k))

    def _from_digits(self, d: Iterable[int]) -> int:
        code, base = 0, 1
        for c in d:
            code += c * base
            base *= self.p
        return code

    def add_codes(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        return self._from_digits((x + y) % p for x, y in zip(self.digits(a), self.digits(b)))

    def neg_code(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        return self._from_digits((-x) % p for x in self.digits(a))

    def sub_codes(self, a: int, b: int) -> int:
        return self.add_codes(a, self.neg_code(b))

    def _mul_slow(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        red = _pmod([c % p for c in prod], self.modulus, p)
        return self._from_digits(red)

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = _prime_factors(order) if order > 1 else []
        g = 1
        for cand in range(1, q):
            if all(self._pow_slow(cand, order // f) != 1 for f in factors):
                g = cand
                break
        exp = [0] * (2 * order) if order else [1]
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp, self._log = exp, log

    def _pow_slow(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            n >>= 1
        return result

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self._exp is None:
            self._build_tables()
        return self._exp[self._log[a] + self._log[b]]

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is None:
            self._build_tables()
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow_code(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv_code(a), -n
        if a == 0:
            return 1 if n == 0 else 0
        if self.k == 1:
            return pow(a, n, self.p)
        if self._exp is None:
            self._build_tables()
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def parse(self, token: str) -> FieldElement:
        """Parse an integer code or a polynomial in ``w`` such as ``w^2+w+1``."""
        token = token.strip().replace(" ", "")
        if token.lstrip("-").isdigit():
            return self(int(token))
        total = self.zero
        for term in token.replace("-", "+-").split("+"):
            if not term:
                continue
            sign = -1 if term.startswith("-") else 1
            term = term.lstrip("-")
            var = "w" if "w" in term else "x" if "x" in term else None
            if var is None:
                total = total + self.from_int(sign * int(term))
                continue
            coef_s, _, rest = term.partition(var)
            coef = int(coef_s.rstrip("*")) if coef_s.rstrip("*") else 1
            exp = int(rest.lstrip("^").lstrip("*")) if rest else 1
            total = total + self.from_int(sign * coef) * self.gen**exp
        return total


class FieldElement:
    """An element of a FieldSpec; supports + - * / ** and mixing with ints.

    Ints are read as multiples of 1 (so ``2`` means ``1 + 1``), never as codes.
    """

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec:
                raise ValueError(f"mismatched fields {self.spec!r} and {other.spec!r}")
            return other.code
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.add_codes(self.code, o))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_code(self.code))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub_codes(self.code, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub_codes(o, self.code))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul_codes(self.code, o))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv_code(self.code))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul_codes(self.code, self.spec.inv_code(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul_codes(o, self.spec.inv_code(self.code)))

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow_code(self.code, n))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec is other.spec and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.spec.p and self.code < self.spec.p
        return NotImplemented

    def __hash__(self):
        return hash((id(self.spec), self.code))

    def __lt__(self, other: FieldElement) -> bool:
        return self.code < other.code

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"{self.spec!r}({self.code})"

    def __str__(self) -> str:
        return str(self.code)


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


@lru_cache(maxsize=None)
def _field_cached(p: int, k: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, k, modulus)


def field_make(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Return GF(p^k).

    >>> F = field_make(2, 3)
    >>> F.descriptor
    '2^3/1,1,0,1'
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k > MAX_ORDER:
        raise ValueError(f"GF({p}^{k}) exceeds the supported size {MAX_ORDER}")
    if modulus is None:
        if k == 1:
            modulus = (0, 1)
        else:
            modulus = MODULUS_TABLE.get((p, k)) or _least_irreducible(p, k)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise ValueError("modulus must be monic of degree k")
    if not _is_irreducible(modulus, p):
        raise ValueError(f"modulus {modulus} is reducible over GF({p})")
    return _field_cached(p, k, modulus)


def field_of_order(q: int) -> FieldSpec:
    p, k = prime_power(q)
    return field_make(p, k)


def parse_field(text: str) -> FieldSpec:
    """Accept ``"q"``, ``"p^k"`` or a full descriptor ``"p^k/c0,...,ck"``."""
    text = text.strip()
    head, _, mod = text.partition("/")
    if "^" in head:
        p_s, k_s = head.split("^")
        p, k = int(p_s), int(k_s)
    else:
        p, k = prime_power(int(head))
    modulus = tuple(int(c) for c in mod.split(",")) if mod else None
    return field_make(p, k, modulus)


def frobenius(e: FieldElement, i: int) -> FieldElement:
    """e^(p^i)."""
    spec = e.spec
    i %= spec.k
    return FieldElement(spec, spec.pow_code(e.code, spec.p**i))


def subfield_elements(spec: FieldSpec, d: int) -> list[FieldElement]:
    """The p^d elements fixed by x -> x^(p^d), in ascending code order."""
    if d < 1 or spec.k % d:
        raise ValueError(f"{d} does not divide the extension degree {spec.k}")
    e = spec.p**d
    return [x for x in spec.elements() if spec.pow_code(x.code, e) == x.code]


def contains_subfield(spec: FieldSpec, order: int) -> bool:
    """Whether GF(order) embeds in ``spec``."""
    p, d = prime_power(order)
    return p == spec.p and spec.k % d == 0


class Polynomial:
    """Polynomial over a FieldSpec, coefficients constant term first."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Iterable[FieldElement]):
        cs = list(coeffs)
        for c in cs:
            if c.spec is not spec:
                raise ValueError("coefficient from a different field")
        while cs and not cs[-1]:
            cs.pop()
        self.spec = spec
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, spec: FieldSpec, ints: Iterable[int]) -> Polynomial:
        """Coefficients given as integers (multiples of 1), constant first."""
        return cls(spec, [spec.from_int(n) for n in ints])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.spec.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"Polynomial({self.spec!r}, {[c.code for c in self.coeffs]})"


def poly_roots(f: Polynomial) -> list[FieldElement]:
    """All roots of ``f`` by evaluation at every element, ascending by code."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    return [e for e in f.spec.elements() if not f(e)]


def golden_poly(spec: FieldSpec) -> Polynomial:
    """x^2 + x - 1."""
    return Polynomial.from_ints(spec, [-1, 1, 1])


def heptagon_poly(spec: FieldSpec) -> Polynomial:
    """x^3 - x^2 - 2x + 1."""
    return Polynomial.from_ints(spec, [1, -2, -1, 1])


def min_degree_for_halfcyclotomic(r: int, p: int) -> int:
    """Least b with p^b = +-1 (mod r): the degree of GF(p)(zeta + 1/zeta)."""
    if r < 3:
        raise ValueError("r must be at least 3")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r % p == 0:
        raise ValueError(f"{p} divides {r}")
    x = p % r
    b = 1
    while x not in (1, r - 1):
        x = x * p % r
        b += 1
    return b
