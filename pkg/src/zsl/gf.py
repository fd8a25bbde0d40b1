"""Finite fields GF(p^n) with integer-encoded elements.

An element c_0 + c_1 g + ... + c_{n-1} g^{n-1} of F_p[g]/(m(g)) is stored as
the integer sum c_i p^i. The modulus m is primitive, so g generates the
multiplicative group and multiplication goes through exp/log tables. All
operations accept numpy integer arrays.
"""

import math

import numpy as np

from .errors import DomainError

MAX_ORDER = 2 ** 20

# Conway polynomials, coefficients listed from the constant term upward.
CONWAY = {
    (2, 1): (1, 1), (2, 2): (1, 1, 1), (2, 3): (1, 1, 0, 1), (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1), (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 1): (1, 1), (3, 2): (2, 2, 1), (3, 3): (1, 2, 0, 1), (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1), (5, 2): (2, 4, 1), (5, 3): (3, 3, 0, 1), (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1), (7, 2): (3, 6, 1), (7, 3): (4, 0, 6, 1), (7, 4): (3, 4, 5, 0, 1),
}


def is_prime(n):
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def prime_power(q):
    """(p, n) with q = p^n, or DomainError."""
    q = int(q)
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n, r = 0, q
    while r % p == 0:
        r //= p
        n += 1
    if r != 1:
        raise DomainError(f"{q} is not a prime power")
    return p, n


# polynomials over F_p: coefficient lists, constant term first ----------------

def _trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_mod(out, m, p)


def poly_mod(a, m, p):
    a = list(a)
    n = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - c * m[j]) % p
    return _trim(a[:n] if n else [0])


def poly_powmod(a, e, m, p):
    out, base = [1], poly_mod(a, m, p)
    while e:
        if e & 1:
            out = poly_mulmod(out, base, m, p)
        base = poly_mulmod(base, base, m, p)
        e >>= 1
    return out


def _prime_factors(n):
    from sympy import factorint  # deferred: sympy is slow to import
    return sorted(factorint(n))


def is_primitive(m, p):
    """True when the monic m of degree n is primitive over F_p, i.e. g = x has
    multiplicative order exactly p^n - 1 in F_p[x]/(m)."""
    n = len(m) - 1
    order = p ** n - 1
    if m[0] % p == 0:
        return False
    x = [0, 1]
    if poly_powmod(x, order, m, p) != [1]:
        return False
    return all(poly_powmod(x, order // r, m, p) != [1] for r in _prime_factors(order))


def first_primitive(p, n):
    """Lexicographically first monic primitive polynomial of degree n."""
    for code in range(p ** n):
        low = [(code // p ** i) % p for i in range(n)]
        m = low + [1]
        if is_primitive(m, p):
            return tuple(m)
    raise DomainError(f"no primitive polynomial of degree {n} over F_{p}")


def modulus_for(p, n):
    return CONWAY.get((p, n)) or first_primitive(p, n)


class GF:
    """The field with p^n elements."""

    def __init__(self, p, n=1):
        if not is_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        self.p, self.n = int(p), int(n)
        self.order = self.p ** self.n
        if self.order > MAX_ORDER:
            raise DomainError(f"field order {self.order} exceeds {MAX_ORDER}")
        self.modulus = modulus_for(self.p, self.n)
        Q = self.order
        pows = self.p ** np.arange(self.n, dtype=np.int64)
        self._pows = pows
        self.digits = (np.arange(Q, dtype=np.int64)[:, None] // pows[None, :]) % self.p
        exp = np.empty(2 * (Q - 1), dtype=np.int64)
        log = np.full(Q, -1, dtype=np.int64)
        state = [1] + [0] * (self.n - 1)
        top_sub = [(-c) % self.p for c in self.modulus[:-1]]
        for e in range(Q - 1):
            code = sum(c * int(w) for c, w in zip(state, pows))
            if log[code] != -1:
                raise DomainError(f"modulus {self.modulus} is not primitive")
            exp[e] = code
            log[code] = e
            top = state[-1]
            state = [0] + state[:-1]
            if top:
                state = [(s + top * t) % self.p for s, t in zip(state, top_sub)]
        exp[Q - 1:] = exp[:Q - 1]
        self.exp, self.log = exp, log

    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash((self.p, self.n))

    @property
    def generator(self):
        return self.p if self.n > 1 else int(self.exp[1])

    def elements(self):
        return np.arange(self.order, dtype=np.int64)

    def _pack(self, digs):
        return (digs % self.p) @ self._pows

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        return self._pack(self.digits[a] + self.digits[b])

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        return a if self.p == 2 else self._pack(-self.digits[a])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        zero = (a == 0) | (b == 0)
        la = np.where(zero, 0, self.log[a])
        lb = np.where(zero, 0, self.log[b])
        return np.where(zero, 0, self.exp[la + lb])

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        la = np.where(a == 0, 0, self.log[a])
        return np.where(a == 0, 0, self.exp[(la * e) % (self.order - 1)])

    def scalar(self, k):
        """The prime-field element k mod p."""
        return int(k) % self.p

    def smul(self, k, a):
        """k * a for an integer k."""
        return self.mul(self.scalar(k), a)

    def quadratic_character(self, a):
        """+1 on nonzero squares, -1 on non-squares, 0 at 0 (odd p)."""
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        return np.where(a == 0, 0, np.where(la % 2 == 0, 1, -1))

    def absolute_trace(self, a):
        """Tr_{F_q / F_p}(a) = a + a^p + ... + a^{p^{n-1}}."""
        a = np.asarray(a, dtype=np.int64)
        total = np.zeros_like(a)
        term = a
        for _ in range(self.n):
            total = self.add(total, term)
            term = self.power(term, self.p)
        return total

    def from_coeffs(self, coeffs):
        """Element with the given generator coefficients (constant first)."""
        if len(coeffs) > self.n:
            raise DomainError(f"too many coefficients for {self}")
        return int(sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs)))

    def coeffs(self, a):
        return [int(c) for c in self.digits[int(a)]]

    def poly_eval(self, coeffs, x):
        """Evaluate the F_p polynomial with integer ``coeffs`` at field elements x."""
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros_like(x)
        for c in reversed(coeffs):
            out = self.add(self.mul(out, x), self.scalar(c))
        return out

    def embedding(self, sub):
        """Field homomorphism from ``sub`` into this field, as a lookup array.

        The image of sub's generator is g^((Q-1)/(q-1)) when that is a root of
        sub's modulus (always true for compatible Conway polynomials),
        otherwise the smallest root.
        """
        if sub.p != self.p or self.n % sub.n:
            raise DomainError(f"{sub} does not embed in {self}")
        cand = int(self.exp[(self.order - 1) // (sub.order - 1)])
        if int(self.poly_eval(sub.modulus, cand)) != 0:
            roots = np.nonzero(self.poly_eval(sub.modulus, self.elements()) == 0)[0]
            cand = int(roots[0])
        powers = [1]
        for _ in range(sub.n - 1):
            powers.append(int(self.mul(powers[-1], cand)))
        table = np.zeros(sub.order, dtype=np.int64)
        for code in range(sub.order):
            acc = 0
            for c, pw in zip(sub.coeffs(code), powers):
                if c:
                    acc = int(self.add(acc, self.smul(c, pw)))
            table[code] = acc
        return table
