"""Reed-Solomon codes cut out by rows of powers of alpha.

A code of length n with u parities is the set of words c satisfying

    sum_j c_j * alpha**(r*j) == 0   for r = 0..u-1,

which is MDS with minimum distance u+1 whenever alpha has order >= n.
Codes over the same context nest by construction: more parities means a
subcode.  Decoding failures are returned as None, never raised.
"""

from __future__ import annotations

from itertools import combinations

from .gf import FieldContext
from .linalg import ParityMatrix, solve_unique


class LengthExceedsOrder(ValueError):
    """Code length outruns the multiplicative order of alpha."""


class RsCode:
    """[n, n-u] code over a field context; u = number of parity rows."""

    def __init__(self, ctx: FieldContext, n: int, u: int):
        if n < 1:
            raise ValueError("length must be positive")
        if not 0 <= u <= n:
            raise ValueError("parity count %d outside 0..%d" % (u, n))
        if not ctx.order_at_least(n):
            raise LengthExceedsOrder(
                "length %d needs order(alpha) >= %d in %r" % (n, n, ctx))
        self.ctx = ctx
        self.n = n
        self.u = u
        self._h: ParityMatrix | None = None
        # position locators alpha**j, reused by every decode
        self._loc = [ctx.alpha_pow(j) for j in range(n)]

    @property
    def dimension(self) -> int:
        return self.n - self.u

    @property
    def min_distance(self) -> int:
        return self.u + 1

    def parity_check(self) -> ParityMatrix:
        if self._h is None:
            ctx = self.ctx
            rows = [[ctx.alpha_pow(r * j) for j in range(self.n)]
                    for r in range(self.u)]
            self._h = ParityMatrix(ctx, rows)
        return self._h

    def syndromes(self, word: list[int]) -> list[int]:
        if len(word) != self.n:
            raise ValueError("word length %d != n=%d" % (len(word), self.n))
        ctx = self.ctx
        out = []
        for r in range(self.u):
            acc = 0
            for j, w in enumerate(word):
                if w:
                    acc ^= ctx.mul(ctx.alpha_pow(r * j), w)
            out.append(acc)
        return out

    def contains(self, word: list[int]) -> bool:
        return not any(self.syndromes(word))

    # -- erasure-only decoding ------------------------------------------

    def erasure_decode(self, word: list[int], erasures: list[int]) -> list[int] | None:
        """Fill the erased positions, or None.

        Solves the u x e system restricted to the erased columns by
        Gaussian elimination.  None when e > u or when the non-erased
        part is inconsistent with every codeword.
        """
        e = sorted(set(erasures))
        if len(e) > self.u:
            return None
        y = list(word)
        for j in e:
            y[j] = 0
        if not e:
            return y if self.contains(y) else None
        ctx = self.ctx
        syn = self.syndromes(y)
        cols = [[ctx.alpha_pow(r * j) for j in e] for r in range(self.u)]
        x = solve_unique(ctx, cols, syn)
        if x is None:
            return None
        for j, v in zip(e, x):
            y[j] = v
        return y

    # -- errors and erasures --------------------------------------------

    def error_erasure_decode(self, word: list[int],
                             erasures: list[int]) -> tuple[list[int], int] | None:
        """Correct i errors plus the erasures when 2i + e <= u.

        Returns (codeword, error_count) or None.  Small codes go through
        an exhaustive error-support search; larger ones through the
        syndrome path (erasure locator, then the Euclidean recursion and
        the derivative formula for values).  Beyond capability the result
        is None unless some codeword happens to sit within capability of
        the received word, in which case it is returned in good faith.
        """
        e = sorted(set(erasures))
        if len(e) > self.u:
            return None
        if self.u <= 4:
            return self._search_decode(word, e)
        return self._syndrome_decode(word, e)

    def _search_decode(self, word: list[int], e: list[int]) -> tuple[list[int], int] | None:
        others = [j for j in range(self.n) if j not in set(e)]
        for i in range((self.u - len(e)) // 2 + 1):
            found: dict[tuple[int, ...], int] = {}
            for support in combinations(others, i):
                cand = self.erasure_decode(word, e + list(support))
                if cand is not None:
                    changed = sum(1 for j in support if cand[j] != word[j])
                    found.setdefault(tuple(cand), changed)
            if len(found) > 1:
                return None
            if found:
                (cand_t, changed), = found.items()
                return list(cand_t), changed
        return None

    def _syndrome_decode(self, word: list[int], e: list[int]) -> tuple[list[int], int] | None:
        ctx = self.ctx
        u = self.u
        y = list(word)
        for j in e:
            y[j] = 0
        syn = self.syndromes(y)
        if not any(syn) and not e:
            return y, 0

        gamma = [1]
        for j in e:
            gamma = _pmul_linear(ctx, gamma, self._loc[j])
        xi = _pmul_trunc(ctx, syn, gamma, u)

        # Euclidean recursion on (z^u, xi) down past degree (u+e)/2
        r_prev = [0] * u + [1]
        r_cur = xi
        t_prev: list[int] = [0]
        t_cur: list[int] = [1]
        while 2 * _pdeg(r_cur) >= u + len(e):
            q, rem = _pdivmod(ctx, r_prev, r_cur)
            r_prev, r_cur = r_cur, rem
            t_prev, t_cur = t_cur, _padd(t_prev, _pmul(ctx, q, t_cur))
        sigma, omega = t_cur, r_cur
        if not sigma or sigma[0] == 0:
            return None
        lam = _pmul(ctx, sigma, gamma)

        nerr = _pdeg(lam)
        if nerr < 0:
            return None
        support = []
        for j in range(self.n):
            if _peval(ctx, lam, ctx.alpha_pow(-j)) == 0:
                support.append(j)
        if len(support) != nerr:
            return None

        dlam = _pderiv(lam)
        errs = 0
        e_set = set(e)
        for j in support:
            xinv = ctx.alpha_pow(-j)
            den = _peval(ctx, dlam, xinv)
            if den == 0:
                return None
            val = ctx.mul(self._loc[j], ctx.div(_peval(ctx, omega, xinv), den))
            if j not in e_set:
                if val == 0:
                    return None
                errs += 1
            y[j] ^= val
        if 2 * errs + len(e) > u:
            return None
        if any(self.syndromes(y)):
            return None
        return y, errs


def build_rs(ctx: FieldContext, n: int, u: int) -> RsCode:
    return RsCode(ctx, n, u)


# -- small polynomial helpers (coefficient lists, index == power) --------

def _pdeg(p: list[int]) -> int:
    d = len(p) - 1
    while d >= 0 and p[d] == 0:
        d -= 1
    return d


def _ptrim(p: list[int]) -> list[int]:
    d = _pdeg(p)
    return p[:d + 1] if d >= 0 else []


def _padd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] ^= v
    return _ptrim(out)


def _pmul(ctx: FieldContext, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        if av:
            for j, bv in enumerate(b):
                if bv:
                    out[i + j] ^= ctx.mul(av, bv)
    return _ptrim(out)


def _pmul_linear(ctx: FieldContext, p: list[int], x: int) -> list[int]:
    """p(z) * (1 + x*z)."""
    out = list(p) + [0]
    for i in range(len(p)):
        if p[i]:
            out[i + 1] ^= ctx.mul(p[i], x)
    return _ptrim(out)


def _pmul_trunc(ctx: FieldContext, a: list[int], b: list[int], k: int) -> list[int]:
    out = [0] * k
    for i, av in enumerate(a):
        if av and i < k:
            for j, bv in enumerate(b):
                if i + j >= k:
                    break
                if bv:
                    out[i + j] ^= ctx.mul(av, bv)
    return _ptrim(out)


def _pdivmod(ctx: FieldContext, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    db = _pdeg(b)
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - db, 1)
    inv_lead = ctx.inv(b[db])
    for shift in range(_pdeg(a) - db, -1, -1):
        coef = ctx.mul(a[shift + db], inv_lead)
        if coef:
            q[shift] = coef
            for i in range(db + 1):
                if b[i]:
                    a[shift + i] ^= ctx.mul(coef, b[i])
    return _ptrim(q), _ptrim(a)


def _peval(ctx: FieldContext, p: list[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = ctx.mul(acc, x) ^ c
    return acc


def _pderiv(p: list[int]) -> list[int]:
    return _ptrim([p[i] if i % 2 == 1 else 0 for i in range(1, len(p))])
