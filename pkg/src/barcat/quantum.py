"""Constructors for the worked examples: anyon algebra, u_q(su2) at odd
roots of unity (and its central extension), and finite-group Hopf algebras.

u_q(su2) structure constants come from a deterministic normal-ordering
rewriter on the basis E^a F^b K^c (K~^d in the extension): K is pushed
rightward picking up q-phases, F^b E is resolved recursively through
[E, F] = (K - K^{-1})/(q - q^{-1}), and E^l = F^l = 0, K^l = 1 truncate.
"""
from __future__ import annotations

from .cyclo import BadOrder, CycloScalar, rat, root_power, zeta
from .groups import FiniteGroup
from .hopf import HopfData, QuasitriangularData
from .tensor import Space, SparseTensor, _acc


class NoQuadraticResidue(ValueError):
    pass


class LazyDict(dict):
    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, key):
        val = self.fn(key)
        self[key] = val
        return val


def quadratic_residue(l: int):
    """Smallest beta in [0, l) with beta^2 = 3 mod l, or None."""
    for beta in range(l):
        if (beta * beta - 3) % l == 0:
            return beta
    return None


# ---------------------------------------------------------------------------
# finite-group Hopf algebras
# ---------------------------------------------------------------------------

def make_group_hopf(G: FiniteGroup, kind: str, conductor: int = 1) -> HopfData:
    """kind="functions": C(G) with pointwise-conjugation star;
    kind="group-algebra": CG with g* = g^{-1}."""
    n = G.order
    one = CycloScalar.one(conductor)
    zero = CycloScalar.zero(conductor)
    if kind == "functions":
        sp = Space(f"C({G.name})", tuple("d" + G.label(i) for i in range(n)))
        mu = {(i, j): ({i: one} if i == j else {}) for i in range(n)
              for j in range(n)}
        unit = {i: one for i in range(n)}
        Delta = {}
        for a in range(n):
            d = {}
            for b in range(n):
                for c in range(n):
                    if G.mul(b, c) == a:
                        d[(b, c)] = one
            Delta[a] = d
        eps = {a: (one if a == G.e else zero) for a in range(n)}
        S = {a: {G.inv[a]: one} for a in range(n)}
        star = {a: {a: one} for a in range(n)}
        return HopfData(f"C({G.name})", sp, conductor, mu, unit, Delta, eps,
                        S, star=star, flip_star=False)
    if kind == "group-algebra":
        sp = Space(f"C[{G.name}]", tuple("e" + G.label(i) for i in range(n)))
        mu = {(i, j): {G.mul(i, j): one} for i in range(n) for j in range(n)}
        unit = {G.e: one}
        Delta = {a: {(a, a): one} for a in range(n)}
        eps = {a: one for a in range(n)}
        S = {a: {G.inv[a]: one} for a in range(n)}
        star = {a: {G.inv[a]: one} for a in range(n)}
        return HopfData(f"C[{G.name}]", sp, conductor, mu, unit, Delta, eps,
                        S, star=star, flip_star=False)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# anyon algebra
# ---------------------------------------------------------------------------

def anyon_RK(H: HopfData, l: int, offset: int = 0) -> SparseTensor:
    """(1/l) sum q^{-2ab} K^a (x) K^b over the K-indexed basis (indices
    shifted by `offset` into a larger exponent encoding when needed)."""
    q = zeta(l)
    linv = rat(1, l)
    ent = {}
    for a in range(l):
        for b in range(l):
            ent[(a + offset, b + offset)] = linv * q ** ((-2 * a * b) % l)
    return SparseTensor(H.spaces(2), ent)


def make_anyon(l: int):
    """Anyon Hopf algebra at a primitive l-th root of unity (l odd > 1):
    K^l = 1 grouplike, K* = K^{-1}, ribbon with nu = u = v."""
    if l <= 1 or l % 2 == 0:
        raise BadOrder(f"need odd l > 1, got {l}")
    q = zeta(l)
    one = CycloScalar.one(l)
    sp = Space(f"anyon{l}", tuple(f"K^{a}" for a in range(l)))
    mu = {(a, b): {(a + b) % l: one} for a in range(l) for b in range(l)}
    unit = {0: one}
    Delta = {a: {(a, a): one} for a in range(l)}
    eps = {a: one for a in range(l)}
    S = {a: {(-a) % l: one} for a in range(l)}
    star = {a: {(-a) % l: one} for a in range(l)}
    H = HopfData(f"anyon{l}", sp, l, mu, unit, Delta, eps, S, star=star,
                 flip_star=True)
    R = anyon_RK(H, l)
    nu_ent: dict = {}
    linv = rat(1, l)
    for a in range(l):
        for r in range(l):
            _acc(nu_ent, (r,), linv * q ** ((-2 * a * (a - r)) % l))
    nu = SparseTensor(H.spaces(1), nu_ent)
    Q = QuasitriangularData(R, nu)
    return H, Q


# ---------------------------------------------------------------------------
# u_q(su2) and its central extension
# ---------------------------------------------------------------------------

class _UqCore:
    """Rewriting engine for normal-ordered monomials E^a F^b K^c (K~^d)."""

    def __init__(self, l: int, extended: bool):
        if l <= 1 or l % 2 == 0:
            raise BadOrder(f"need odd l > 1, got {l}")
        self.l = l
        self.extended = extended
        self.q = zeta(l)
        self.qpows = [zeta(l, k) for k in range(l)]
        self.k = (l - 1) // 2
        self.qden_inv = (self.q - self.q ** (l - 1)).inv()  # 1/(q - q^{-1})
        self._fbe: list[dict] = [{(1, 0, 0): rat(1)}]  # F^0 E = E
        self._mono_memo: dict = {}

    def qp(self, e: int) -> CycloScalar:
        return self.qpows[e % self.l]

    # exponent tuples are (a, b, c) or (a, b, c, d) with d the K~ power
    def fbe(self, b: int) -> dict:
        """Normal form of F^b E as {(a', b', c'): coeff}."""
        while len(self._fbe) <= b:
            prev = self._fbe[-1]
            m = len(self._fbe) - 1  # prev is F^m E
            out: dict = {}
            for (a, bb, c), v in prev.items():
                # (E^a F^bb K^c) . F = q^{-2c} E^a F^{bb+1} K^c
                if bb + 1 < self.l:
                    _acc(out, (a, bb + 1, c), v * self.qp(-2 * c))
            # - F^m (K - K^{-1})/(q - q^{-1})
            _acc(out, (0, m, 1), -self.qden_inv)
            _acc(out, (0, m, self.l - 1), self.qden_inv)
            self._fbe.append(out)
        return self._fbe[b]

    def _rmul_E(self, d: dict) -> dict:
        out: dict = {}
        for key, v in d.items():
            a, b, c = key[:3]
            rest = key[3:]
            coeff = v * self.qp(2 * c)
            for (a2, b2, c2), w in self.fbe(b).items():
                if a + a2 < self.l:
                    _acc(out, (a + a2, b2, (c + c2) % self.l) + rest,
                         coeff * w)
        return out

    def _rmul_F(self, d: dict) -> dict:
        out: dict = {}
        for key, v in d.items():
            a, b, c = key[:3]
            if b + 1 < self.l:
                _acc(out, (a, b + 1, c) + key[3:], v * self.qp(-2 * c))
        return out

    def _rmul_K(self, d: dict, power: int = 1) -> dict:
        return {key[:2] + (((key[2] + power) % self.l),) + key[3:]: v
                for key, v in d.items()}

    def _rmul_Kt(self, d: dict, power: int = 1) -> dict:
        return {key[:3] + (((key[3] + power) % self.l),): v
                for key, v in d.items()}

    def mono_mult(self, m1: tuple, m2: tuple) -> dict:
        memo = self._mono_memo
        got = memo.get((m1, m2))
        if got is not None:
            return got
        cur = {m1: rat(1)}
        a2, b2, c2 = m2[:3]
        for _ in range(a2):
            cur = self._rmul_E(cur)
        for _ in range(b2):
            cur = self._rmul_F(cur)
        if c2:
            cur = self._rmul_K(cur, c2)
        if self.extended and m2[3]:
            cur = self._rmul_Kt(cur, m2[3])
        memo[(m1, m2)] = cur
        return cur

    # -- index encoding --------------------------------------------------------

    def exps(self):
        l = self.l
        if self.extended:
            return [(a, b, c, d) for a in range(l) for b in range(l)
                    for c in range(l) for d in range(l)]
        return [(a, b, c) for a in range(l) for b in range(l)
                for c in range(l)]

    def to_index(self, m: tuple) -> int:
        l = self.l
        idx = (m[0] * l + m[1]) * l + m[2]
        if self.extended:
            idx = idx * l + m[3]
        return idx

    def from_index(self, i: int) -> tuple:
        l = self.l
        if self.extended:
            i, d = divmod(i, l)
            i, c = divmod(i, l)
            a, b = divmod(i, l)
            return (a, b, c, d)
        i, c = divmod(i, l)
        a, b = divmod(i, l)
        return (a, b, c)


def _mono_label(m: tuple) -> str:
    parts = []
    for sym, e in zip(("E", "F", "K", "Kt"), m):
        if e:
            parts.append(f"{sym}{e}" if e > 1 else sym)
    return "*".join(parts) if parts else "1"


def make_uqsu2(l: int, extended: bool = False, beta: int | None = None):
    """u_q(su2) at a primitive l-th root of unity (odd l > 1), with its
    quasitriangular and ribbon structure and the flip star E* = -F,
    F* = -E, K* = K^{-1}.  extended=True adjoins a central grouplike K~
    with the anyonic relations (requires beta with beta^2 = 3 mod l)."""
    core = _UqCore(l, extended)
    if extended:
        if beta is None or (beta * beta - 3) % l != 0:
            raise NoQuadraticResidue(
                f"extension needs beta with beta^2 = 3 mod {l}")
    q = core.q
    exps = core.exps()
    labels = tuple(_mono_label(m) for m in exps)
    name = ("uqsu2~" if extended else "uqsu2") + str(l)
    sp = Space(name, labels)
    one = CycloScalar.one(l)
    zero = CycloScalar.zero(l)
    zerot = (0, 0, 0, 0) if extended else (0, 0, 0)

    def mu_fn(i, j):
        d = core.mono_mult(core.from_index(i), core.from_index(j))
        return {core.to_index(m): v for m, v in d.items() if not v.is_zero}

    mu = LazyDict(lambda key: mu_fn(*key))
    # fill eagerly only for small dimensions (full axiom checks need it all)
    unit = {core.to_index(zerot): one}

    # coproduct: iterated multiplication in H (x) H of the generator values
    def pair_mult(x: dict, y: dict) -> dict:
        out: dict = {}
        for (m1, m2), v in x.items():
            for (n1, n2), w in y.items():
                p1 = core.mono_mult(m1, n1)
                p2 = core.mono_mult(m2, n2)
                c = v * w
                for e1, v1 in p1.items():
                    cv = c * v1
                    for e2, v2 in p2.items():
                        _acc(out, (e1, e2), cv * v2)
        return out

    def mk(a=0, b=0, c=0, d=0):
        return (a, b, c, d) if extended else (a, b, c)

    DE = {(mk(1), mk(c=1)): one, (zerot, mk(1)): one}
    DF = {(mk(b=1), zerot): one, (mk(c=l - 1), mk(b=1)): one}
    DK = {(mk(c=1), mk(c=1)): one}
    DKt = {(mk(d=1), mk(d=1)): one} if extended else None

    def Delta_fn(i):
        m = core.from_index(i)
        cur = {(zerot, zerot): one}
        for gen, count in ((DE, m[0]), (DF, m[1]), (DK, m[2])):
            for _ in range(count):
                cur = pair_mult(cur, gen)
        if extended:
            for _ in range(m[3]):
                cur = pair_mult(cur, DKt)
        return {(core.to_index(e1), core.to_index(e2)): v
                for (e1, e2), v in cur.items() if not v.is_zero}

    Delta = LazyDict(Delta_fn)

    def eps_fn(i):
        m = core.from_index(i)
        return one if m[0] == 0 and m[1] == 0 else zero

    eps = LazyDict(eps_fn)

    # antihomomorphism generator values, already in normal order
    SE = {mk(1, 0, l - 1): -one}                    # S(E) = -E K^{-1}
    SF = {mk(0, 1, 1): -core.qp(-2)}                # S(F) = -K F = -q^{-2} F K
    STE = {mk(b=1): -one}                           # E* = -F
    STF = {mk(1): -one}                             # F* = -E

    def elem_mult(x: dict, y: dict) -> dict:
        out: dict = {}
        for m1, v in x.items():
            for m2, w in y.items():
                c = v * w
                for e, u in core.mono_mult(m1, m2).items():
                    _acc(out, e, c * u)
        return out

    def anti_image(i, gE, gF, kpow, ktpow):
        """Image of basis monomial under an antihomomorphism given by
        generator images (K -> K^kpow, K~ -> K~^ktpow)."""
        m = core.from_index(i)
        cur = {mk(c=(kpow * m[2]) % l): one}
        if extended:
            cur = {mk(c=(kpow * m[2]) % l, d=(ktpow * m[3]) % l): one}
        for _ in range(m[1]):
            cur = elem_mult(cur, gF)
        for _ in range(m[0]):
            cur = elem_mult(cur, gE)
        return {core.to_index(e): v for e, v in cur.items() if not v.is_zero}

    S = LazyDict(lambda i: anti_image(i, SE, SF, l - 1, l - 1))
    star = LazyDict(lambda i: anti_image(i, STE, STF, l - 1, l - 1))

    H = HopfData(name, sp, l, mu, unit, Delta, eps, S, star=star,
                 flip_star=True)

    # R = R_K [ R_K~ ] . sum_n c_n E^n (x) F^n, c_n = (q-q^{-1})^n/[n;q^{-2}]!
    qm = q - q ** (l - 1)
    cs = [one]
    fact = one
    for n in range(1, l):
        bracket = zero
        for t in range(n):
            bracket = bracket + core.qp(-2 * t)
        fact = fact * bracket
        cs.append(qm ** n * fact.inv())

    def idx(a=0, b=0, c=0, d=0):
        return core.to_index(mk(a, b, c, d))

    linv = rat(1, l)
    RK_ent = {(idx(c=a), idx(c=b)): linv * core.qp(-2 * a * b)
              for a in range(l) for b in range(l)}
    RK = SparseTensor(H.spaces(2), RK_ent)
    EF_ent = {(idx(a=n), idx(b=n)): cs[n] for n in range(l)}
    EnFn = SparseTensor(H.spaces(2), EF_ent)
    R = H.mult_el(RK, EnFn)
    if extended:
        RKt_ent = {(idx(d=a), idx(d=b)): linv * core.qp(-2 * a * b)
                   for a in range(l) for b in range(l)}
        R = H.mult_el(SparseTensor(H.spaces(2), RKt_ent), R)

    # the Gauss sum entering the ribbon normalisation must not vanish
    gauss = zero
    for m in range(l):
        gauss = gauss + core.qp(core.k * m * m + m)
    if gauss.is_zero:
        raise BadOrder(f"vanishing Gauss sum at l={l}")

    # ribbon element: nu = v K, where v = R^(1) S(R^(2)).  The grouplike
    # gamma = v^{-1} nu = K conjugates by S^2, so all ribbon axioms hold;
    # they are verified (never assumed) by check_quasitriangular_ribbon.
    # The closed form uq_nu_closed_form below reproduces it exactly.
    Q = QuasitriangularData(R)
    nu = H.mult_el(Q.v(H), H.basis_el(idx(c=1)))
    Q.nu = nu
    return H, Q


def uq_nu_closed_form(H: HopfData, l: int, extended: bool = False
                      ) -> SparseTensor:
    """Closed form of the ribbon element of u_q(su2):

        nu = (1/l)(sum_m q^{k m^2 + m}) *
             sum_{n,a} (-1)^n c_n q^{-(k+1)(n-a)^2 + a(a-1)} E^n K^a F^n

    with c_n = (q-q^{-1})^n/[n;q^{-2}]!, l = 2k+1, normal-ordered via
    E^n K^a F^n = q^{-2an} E^n F^n K^a.  Tests assert this equals v K.
    In the extended algebra the K~ anyon factor's own ribbon element
    (1/l) sum_{a,r} q^{-2a(a-r)} K~^r multiplies in.
    """
    core = _UqCore(l, extended)
    q = core.q
    one = CycloScalar.one(l)
    zero = CycloScalar.zero(l)
    qm = q - q ** (l - 1)
    cs = [one]
    fact = one
    for n in range(1, l):
        bracket = zero
        for t in range(n):
            bracket = bracket + core.qp(-2 * t)
        fact = fact * bracket
        cs.append(qm ** n * fact.inv())
    lam = zero
    for m in range(l):
        lam = lam + core.qp(core.k * m * m + m)
    lam = rat(1, l) * lam

    def mk(a=0, b=0, c=0, d=0):
        return (a, b, c, d) if extended else (a, b, c)

    kk = core.k + 1
    ent: dict = {}
    for n in range(l):
        for a in range(l):
            sgn = -one if n % 2 else one
            coeff = (lam * sgn * cs[n]
                     * core.qp(-kk * (n - a) ** 2 + a * (a - 1))
                     * core.qp(-2 * a * n))
            _acc(ent, (core.to_index(mk(a=n, b=n, c=a)),), coeff)
    nu = SparseTensor(H.spaces(1), ent)
    if extended:
        linv = rat(1, l)
        nut_ent: dict = {}
        for a in range(l):
            for r in range(l):
                _acc(nut_ent, (core.to_index(mk(d=r)),),
                     linv * core.qp(-2 * a * (a - r)))
        nu = H.mult_el(SparseTensor(H.spaces(1), nut_ent), nu)
    return nu
