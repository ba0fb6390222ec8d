"""Canonical bases of f per weight.

Construction: induction on tr nu.  Candidates theta_i^{(n)} b' over b' in
the lower basis with eps_i(b') = 0, processed by decreasing n; each
candidate is corrected against already-accepted elements by splitting
off the bar-invariant upper part of the pairing series until all
pairings lie in v^-1 Z[[v^-1]].  Every element carries an integral
expansion over run-merged divided monomials, which certifies
integrality and drives fast re-expansion of products.

brute_force_cb is an independent oracle for dim <= 3: it enumerates
unit vectors of an integer lattice carved out of a bar-invariant
integral ansatz by a positive semidefinite descent, with no input from
the inductive construction.
"""

import functools
import math

from fractions import Fraction

from .coeff import (
    LaurentPoly, RationalFn, ZERO, ONE, R_ZERO, R_ONE,
    quantum_binomial, lattice_test, laurent_lcm,
)
from .falg import DividedWord
from ._linalg import mat_inverse, int_kernel, smith_complement


class CBError(RuntimeError):
    """Canonical-basis verification failed; message carries diagnostics."""


class CBElement:
    """One canonical basis vector with its string statistics.

    expansion maps run-merged divided-monomial letter tuples to Laurent
    coefficients; its existence is the integrality certificate.
    """

    __slots__ = ("id", "vector", "eps", "eps_sigma", "expansion", "lead")

    def __init__(self, ident, vector, expansion):
        self.id = ident
        self.vector = vector
        self.expansion = expansion
        self.lead = min(expansion, key=_monomial_key) if expansion else None
        self.eps = {}
        self.eps_sigma = {}

    def lead_coeff(self):
        return self.expansion[self.lead]

    def divided_words(self):
        return {DividedWord(k): c for k, c in self.expansion.items()}

    def __repr__(self):
        return "CBElement(%r)" % (self.id,)


def _monomial_key(letters):
    out = []
    for i, a in letters:
        out.extend([i] * a)
    return tuple(out)


def _merge_prepend(i, n, letters):
    """Run-merge theta_i^{(n)} onto a divided monomial; (letters, factor)."""
    if letters and letters[0][0] == i:
        m = letters[0][1]
        return ((i, n + m),) + letters[1:], quantum_binomial(n + m, n)
    return ((i, n),) + letters, ONE


def _merge_concat(l1, l2):
    """Run-merge a concatenation of two divided monomials."""
    if not l1:
        return l2, ONE
    if not l2:
        return l1, ONE
    (i, a), (j, b) = l1[-1], l2[0]
    if i == j:
        return l1[:-1] + ((i, a + b),) + l2[1:], quantum_binomial(a + b, a)
    return l1 + l2, ONE


def _expansion_vector(alg, expansion):
    acc = None
    for letters, c in expansion.items():
        dv = alg.divided_word_vector(DividedWord(letters)).scale(c)
        acc = dv if acc is None else acc + dv
    return acc


def _upper_part(x):
    """(P, ok): bar-invariant completion of the nonnegative-degree part
    of the v^-1-series of x; ok=False if those coefficients are not
    integers."""
    terms = {}
    for e, c in x.series_upper():
        if c.denominator != 1:
            return None, False
        c = int(c)
        if not c:
            continue
        terms[e] = terms.get(e, 0) + c
        if e > 0:
            terms[-e] = terms.get(-e, 0) + c
    return LaurentPoly(terms), True


def _monomials_for(alg, nu):
    """Run-merged divided monomials of weight nu with their vectors."""
    cache = getattr(alg, "_mono_cache", None)
    if cache is None:
        cache = alg._mono_cache = {}
    hit = cache.get(nu)
    if hit is None:
        monomials = _run_merged_monomials(alg, nu)
        mvecs = [alg.divided_word_vector(DividedWord(l)) for l in monomials]
        hit = cache[nu] = (monomials, mvecs)
    return hit


def _const_pairing(alg, x, dvec):
    """Constant series term of (x, dvec), an integer for lattice input."""
    for e, c in alg.gram_form(x, dvec).series_upper():
        if e == 0:
            if c.denominator != 1:
                raise CBError("non-integral constant pairing term")
            return int(c)
    return 0


def _cb_sign(alg, nu, vec):
    """+1 or -1: the sign convention is that the first run-merged
    monomial (in expanded lexicographic order) with nonzero constant
    pairing term pairs positively."""
    _, mvecs = _monomials_for(alg, nu)
    for dvec in mvecs:
        c = _const_pairing(alg, vec, dvec)
        if c > 0:
            return 1
        if c < 0:
            return -1
    raise CBError("vector pairs to lower order with every monomial")


def _profile_sort(alg, nu, elements):
    """Deterministic order shared by both constructions: descending
    lexicographic in the constant pairing terms against the run-merged
    monomials taken in expanded lexicographic order.  Distinct basis
    vectors always separate, and the first nonzero profile entry of
    each must be positive (the sign convention), else CBError."""
    _, mvecs = _monomials_for(alg, nu)
    nm = len(mvecs)
    cache = [{} for _ in elements]

    def const(i, l):
        c = cache[i].get(l)
        if c is None:
            c = cache[i][l] = _const_pairing(
                alg, elements[i].vector, mvecs[l])
        return c

    for i in range(len(elements)):
        for l in range(nm):
            c = const(i, l)
            if c < 0:
                raise CBError(
                    "sign convention violated at nu=%r" % (nu,))
            if c > 0:
                break
        else:
            raise CBError(
                "vector pairs to lower order with every monomial")

    def cmp(i, j):
        for l in range(nm):
            a, b = const(i, l), const(j, l)
            if a != b:
                return -1 if a > b else 1
        return 0

    order = sorted(range(len(elements)), key=functools.cmp_to_key(cmp))
    out = []
    for k, i in enumerate(order):
        el = elements[i]
        el.id = (nu, k)
        out.append(el)
    return out


def canonical_basis(alg, nu, order="standard"):
    """The canonical basis of f_nu as a list of CBElement."""
    nu = tuple(nu)
    cache = getattr(alg, "_cb_cache", None)
    if cache is None:
        cache = alg._cb_cache = {}
    key = (nu, order)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if sum(nu) == 0:
        one = CBElement((nu, 0), alg.one(), {(): ONE})
        for i in alg.cartan.gens:
            one.eps[i] = 0
            one.eps_sigma[i] = 0
        cache[key] = [one]
        return [one]

    candidates = []
    for gi, i in enumerate(alg.cartan.gens):
        if nu[gi] == 0:
            continue
        for n in range(nu[gi], 0, -1):
            sub = tuple(m - n if k == gi else m for k, m in enumerate(nu))
            for bi, b in enumerate(canonical_basis(alg, sub, order)):
                if b.eps[i] == 0:
                    candidates.append((n, gi, bi, i, b))
    # any order with n descending is admissible: the correction partners
    # of a candidate at (i, n) all come from strictly larger n
    if order == "standard":
        candidates.sort(key=lambda t: (-t[0], t[1], t[2]))
    elif order == "alt":
        candidates.sort(key=lambda t: (-t[0], -t[1], -t[2]))
    else:
        raise ValueError("unknown candidate order %r" % (order,))

    accepted = []
    for n, gi, bi, i, b in candidates:
        vec = alg.multiply(alg.divided(i, n), b.vector)
        expansion = {}
        for letters, c in b.expansion.items():
            newl, factor = _merge_prepend(i, n, letters)
            cur = expansion.get(newl, ZERO) + c * factor
            if cur:
                expansion[newl] = cur
            else:
                expansion.pop(newl, None)
        # correction: repeatedly remove the bar-invariant upper parts of
        # the pairings against accepted elements; terminates because the
        # top degree of the offending parts strictly drops
        for _ in range(200):
            offenders = []
            for el in accepted:
                g = alg.gram_form(vec, el.vector)
                p, ok = _upper_part(g)
                if not ok:
                    raise CBError(
                        "non-integral pairing series at nu=%r" % (nu,))
                if p:
                    offenders.append((el, p))
            if not offenders:
                break
            for el, p in offenders:
                vec = vec - el.vector.scale(p)
                for letters, c in el.expansion.items():
                    cur = expansion.get(letters, ZERO) - p * c
                    if cur:
                        expansion[letters] = cur
                    else:
                        expansion.pop(letters, None)
        else:
            raise CBError("correction failed to terminate at nu=%r" % (nu,))
        if vec.is_zero():
            continue
        accepted.append(CBElement((nu, len(accepted)), vec, expansion))

    accepted = _profile_sort(alg, nu, accepted)
    _certify(alg, nu, accepted)
    _fill_string_stats(alg, accepted)
    cache[key] = accepted
    return accepted


def _fill_string_stats(alg, elements):
    for el in elements:
        for i in alg.cartan.gens:
            el.eps[i] = _epsilon_vector(alg, i, el.vector)
        sig = alg.sigma(el.vector)
        for i in alg.cartan.gens:
            el.eps_sigma[i] = _epsilon_vector(alg, i, sig)


def _certify(alg, nu, basis):
    dim = alg.dim(nu)
    if len(basis) != dim:
        raise CBError("found %d basis vectors at nu=%r, dim is %d"
                      % (len(basis), nu, dim))
    for k, el in enumerate(basis):
        if el.vector.bar() != el.vector:
            raise CBError("basis vector %d at nu=%r not bar-invariant"
                          % (k, nu))
        rebuilt = _expansion_vector(alg, el.expansion)
        if rebuilt != el.vector:
            raise CBError(
                "integral expansion of vector %d at nu=%r is inconsistent"
                % (k, nu))
        for l in range(k, dim):
            g = alg.gram_form(el.vector, basis[l].vector)
            delta = R_ONE if l == k else R_ZERO
            d = g - delta
            if d:
                if d.num.degree() - d.den.degree() >= 0:
                    raise CBError(
                        "pairing (%d,%d) at nu=%r not almost-orthonormal"
                        % (k, l, nu))
                if not lattice_test(d, "in_A"):
                    raise CBError(
                        "pairing (%d,%d) at nu=%r not integral" % (k, l, nu))


# -- string statistics -----------------------------------------------------

def _image_echelon(alg, ix, nu, n):
    """Echelonized image of left multiplication by theta_i^n into f_nu."""
    cache = getattr(alg, "_img_cache", None)
    if cache is None:
        cache = alg._img_cache = {}
    key = (ix, nu, n)
    hit = cache.get(key)
    if hit is not None:
        return hit
    sub = tuple(m - n if k == ix else m for k, m in enumerate(nu))
    src = alg.weight_space(sub)
    tgt = alg.weight_space(nu)
    word = (ix,) * n
    rows = []
    for p in src.pivots:
        vec = list(tgt.coords_of_word(word + p))
        _echelon_absorb(rows, vec)
    cache[key] = rows
    return rows


def _echelon_absorb(rows, vec):
    """Reduce vec against rows in place; absorb a new pivot if nonzero."""
    _echelon_reduce(rows, vec)
    for lead in range(len(vec)):
        if vec[lead]:
            inv = vec[lead].inverse()
            rows.append((lead, [inv * c for c in vec]))
            return False
    return True


def _echelon_reduce(rows, vec):
    for lead, row in rows:
        c = vec[lead]
        if c:
            for k in range(len(vec)):
                if row[k]:
                    vec[k] = vec[k] - c * row[k]


def _epsilon_vector(alg, i, x):
    """Max n with x in theta_i^n f, by image membership."""
    if x.is_zero():
        return 0
    ix = alg.cartan.index(i)
    best = 0
    for n in range(1, x.nu[ix] + 1):
        rows = _image_echelon(alg, ix, tuple(x.nu), n)
        vec = list(x.coords)
        _echelon_reduce(rows, vec)
        if any(vec):
            break
        best = n
    return best


def epsilon(alg, i, b, side="left"):
    """eps_i(b) (side='left') or eps_i^sigma(b) (side='right')."""
    if side == "left":
        return b.eps[i] if b.eps else _epsilon_vector(alg, i, b.vector)
    if side == "right":
        return b.eps_sigma[i] if b.eps_sigma else \
            _epsilon_vector(alg, i, alg.sigma(b.vector))
    raise ValueError("side must be left or right")


def b_lambda(alg, datum, lam, nu):
    """B(lambda) at weight nu: elements with eps_i^sigma(b) <= <i,lam>."""
    if not hasattr(lam, "coords"):
        lam = datum.weight(lam)
    bounds = {i: datum.pair(i, lam) for i in alg.cartan.gens}
    out = []
    for b in canonical_basis(alg, nu):
        if all(b.eps_sigma[i] <= bounds[i] for i in alg.cartan.gens):
            out.append(b)
    return out


# -- re-expansion over the canonical basis ---------------------------------

class CBExpander:
    """Expresses elements over CB(nu) using leading-monomial reduction.

    Falls back to an exact rational solve when leading monomials collide
    or a division is not exact.
    """

    def __init__(self, alg, nu):
        self.alg = alg
        self.nu = tuple(nu)
        self.basis = canonical_basis(alg, self.nu)
        leads = {}
        ok = True
        for k, el in enumerate(self.basis):
            if el.lead in leads:
                ok = False
                break
            leads[el.lead] = k
        self.leads = leads if ok else None
        self._inv = None

    def _rational_solve(self, vec):
        if self._inv is None:
            cols = [el.vector.coords for el in self.basis]
            mat = [[cols[b][a] for b in range(len(cols))]
                   for a in range(len(cols[0]))]
            self._inv = mat_inverse(mat, R_ZERO, R_ONE)
            if self._inv is None:
                raise CBError("canonical basis matrix singular at %r"
                              % (self.nu,))
        coords = vec.coords
        return [sum((row[b] * coords[b]
                     for b in range(len(coords)) if coords[b]), R_ZERO)
                for row in self._inv]

    def reduce_expansion(self, expansion):
        """CB coordinates of sum_D c_D D given as {letters: LaurentPoly}."""
        if self.leads is not None:
            coeffs = [ZERO] * len(self.basis)
            work = dict(expansion)
            ok = True
            while work:
                lead = min(work, key=_monomial_key)
                c = work.pop(lead)
                if not c:
                    continue
                k = self.leads.get(lead)
                if k is None:
                    ok = False
                    break
                el = self.basis[k]
                q = c.exact_div(el.lead_coeff())
                if q is None:
                    ok = False
                    break
                coeffs[k] = coeffs[k] + q
                for letters, ec in el.expansion.items():
                    if letters == lead:
                        continue
                    cur = work.get(letters, ZERO) - q * ec
                    if cur:
                        work[letters] = cur
                    else:
                        work.pop(letters, None)
            if ok:
                return [RationalFn(c) for c in coeffs]
        vec = _expansion_vector(self.alg, expansion)
        if vec is None:
            return [R_ZERO] * len(self.basis)
        return self._rational_solve(vec)

    def reduce_vector(self, vec):
        return self._rational_solve(vec)


def expander_for(alg, nu):
    """Shared CBExpander instances, cached per weight on the algebra."""
    cache = getattr(alg, "_expander_cache", None)
    if cache is None:
        cache = alg._expander_cache = {}
    nu = tuple(nu)
    ex = cache.get(nu)
    if ex is None:
        ex = cache[nu] = CBExpander(alg, nu)
    return ex


def multiply_expansions(e1, e2):
    """Product of two divided-monomial expansions, run-merged."""
    out = {}
    for l1, c1 in e1.items():
        for l2, c2 in e2.items():
            letters, factor = _merge_concat(l1, l2)
            c = c1 * c2 * factor
            cur = out.get(letters, ZERO) + c
            if cur:
                out[letters] = cur
            else:
                out.pop(letters, None)
    return out


def verify_structure_positivity(alg, nu1, nu2):
    """Positivity of products B_{nu1} B_{nu2} and of r on B_{nu1+nu2}.

    Returns a report dict; failures are entries, not exceptions.
    """
    nu1, nu2 = tuple(nu1), tuple(nu2)
    nu12 = alg.nu_add(nu1, nu2)
    cb1 = canonical_basis(alg, nu1)
    cb2 = canonical_basis(alg, nu2)
    expander = CBExpander(alg, nu12)
    violations = []
    checked = 0
    for b1 in cb1:
        for b2 in cb2:
            prod = multiply_expansions(b1.expansion, b2.expansion)
            coeffs = expander.reduce_expansion(prod)
            for k, c in enumerate(coeffs):
                checked += 1
                if c and not lattice_test(c, "in_Nvv"):
                    violations.append({
                        "kind": "mult", "b1": b1.id, "b2": b2.id,
                        "target": expander.basis[k].id, "coeff": str(c)})
    # comultiplication component at the (nu1, nu2) split
    exp1 = CBExpander(alg, nu1)
    exp2 = CBExpander(alg, nu2)
    inv1 = [exp1.reduce_vector(alg.pivot_vector(nu1, a))
            for a in range(alg.dim(nu1))]
    inv2 = [exp2.reduce_vector(alg.pivot_vector(nu2, a))
            for a in range(alg.dim(nu2))]
    for b in expander.basis:
        struct = alg.comultiply_struct(b.vector).get((nu1, nu2), {})
        out = {}
        for (a, c), coeff in struct.items():
            for k1, t1 in enumerate(inv1[a]):
                if not t1:
                    continue
                for k2, t2 in enumerate(inv2[c]):
                    if not t2:
                        continue
                    key = (k1, k2)
                    cur = out.get(key, R_ZERO) + coeff * t1 * t2
                    if cur:
                        out[key] = cur
                    else:
                        out.pop(key, None)
        for (k1, k2), c in sorted(out.items()):
            checked += 1
            if not lattice_test(c, "in_Nvv"):
                violations.append({
                    "kind": "comult", "b": b.id,
                    "left": cb1[k1].id, "right": cb2[k2].id,
                    "coeff": str(c)})
    return {"check": "structure_positivity", "nu1": list(nu1),
            "nu2": list(nu2), "checked": checked,
            "violations": violations,
            "status": "pass" if not violations else "fail"}


# -- brute-force oracle ----------------------------------------------------

def _run_merged_monomials(alg, nu):
    """All run-merged divided monomials of weight nu, deterministic order."""
    nu = tuple(nu)
    out = []

    def rec(rem, prefix, last):
        if all(m == 0 for m in rem):
            out.append(tuple(prefix))
            return
        for gi in range(len(rem)):
            if rem[gi] == 0 or gi == last:
                continue
            for a in range(1, rem[gi] + 1):
                rem2 = list(rem)
                rem2[gi] -= a
                rec(rem2, prefix + [(alg.cartan.gens[gi], a)], gi)

    rec(list(nu), [], None)
    return sorted(out, key=_monomial_key)


def _rat(fr):
    fr = Fraction(fr)
    return RationalFn(LaurentPoly({0: fr.numerator}),
                      LaurentPoly({0: fr.denominator}))


def _s_poly(k):
    return LaurentPoly({0: 1}) if k == 0 else LaurentPoly({k: 1, -k: 1})


def _phi_combine(alg, nu, phi_vals, vecu):
    acc = None
    for u, n in enumerate(vecu):
        if n:
            term = phi_vals[u].scale(n)
            acc = term if acc is None else acc + term
    return acc if acc is not None else alg.zero(nu)


def _int_box(bounds):
    """All nonzero integer tuples q with |q_r| <= bounds[r]."""
    if not bounds:
        return
    out = [()]
    for b in bounds:
        out = [t + (c,) for t in out for c in range(-b, b + 1)]
    for t in out:
        if any(t):
            yield t


def brute_force_cb(alg, nu, window=None):
    """Independent solve of the defining conditions; dim f_nu <= 3 only.

    The ansatz runs over run-merged divided monomials D_l with integer
    coefficients spanned by 1 and v^k + v^-k for k up to the window, so
    integrality and bar-invariance of every candidate are built in.
    Quotienting out the combinations that vanish in f_nu leaves a
    finite-rank lattice L containing the integer span of the signed
    basis.  At the top pairing degree E >= 1 of L the coefficient form
    x -> [v^E](x,x) is positive semidefinite with the signed-basis span
    inside its radical, so cutting L down to that radical and repeating
    strips all positive-degree pairing terms; the descent must end at
    rank d = dim f_nu (else the window was too small).  There the
    constant pairing term is positive definite and its unit vectors
    are exactly the 2d signed basis elements.

    Any unit vector found is a signed basis element no matter the
    window, so an undersized window can only fail loudly (rank or
    count off); with window=None the window grows until it suffices.
    """
    nu = tuple(nu)
    tr = sum(nu)
    if alg.dim(nu) > 3:
        raise CBError("brute_force_cb limited to dim <= 3, got %d"
                      % alg.dim(nu))
    if tr == 0:
        return canonical_basis(alg, nu)
    if window is not None:
        return _brute_force_window(alg, nu, window)
    err = None
    for w in sorted({min(2, tr + 2), min(4, tr + 2), tr + 2}):
        try:
            return _brute_force_window(alg, nu, w)
        except CBError as e:
            err = e
    raise err


def _brute_force_window(alg, nu, window):
    d = alg.dim(nu)
    monomials, mvecs = _monomials_for(alg, nu)
    nm = len(monomials)
    gens = [(li, k) for li in range(nm) for k in range(window + 1)]
    nuk = len(gens)
    phi_vals = [mvecs[li].scale(RationalFn(_s_poly(k))) for li, k in gens]
    phi_rows = []
    for j in range(d):
        common = ONE
        for u in range(nuk):
            f = phi_vals[u].coords[j]
            if f:
                common = laurent_lcm(common, f.den)
        polys = []
        for u in range(nuk):
            f = phi_vals[u].coords[j]
            polys.append(f.num * common.exact_div(f.den) if f else None)
        for e in sorted({e for p in polys if p for e in p.terms}):
            phi_rows.append([p.coeff(e) if p else 0 for p in polys])
    zero_lat = int_kernel(phi_rows, nuk)
    qvecs = [list(crow) for crow in smith_complement(zero_lat, nuk)]
    wvecs = [_phi_combine(alg, nu, phi_vals, vecu) for vecu in qvecs]

    def pair_top(g):
        return g.num.degree() - g.den.degree() if g else None

    while True:
        n = len(qvecs)
        gram = [[alg.gram_form(wvecs[r], wvecs[s]) for s in range(n)]
                for r in range(n)]
        tops = [pair_top(gram[r][s]) for r in range(n) for s in range(n)]
        top = max((e for e in tops if e is not None), default=None)
        if top is None or top <= 0:
            break
        ent = [[dict(gram[r][s].series_upper()).get(top, Fraction(0))
                if gram[r][s] else Fraction(0) for s in range(n)]
               for r in range(n)]
        den = 1
        for r in range(n):
            for s in range(n):
                q = ent[r][s].denominator
                den = den * q // math.gcd(den, q)
        mat = [[int(ent[r][s] * den) for s in range(n)] for r in range(n)]
        cut = int_kernel(mat, n)
        if len(cut) == n:
            raise CBError("degenerate top form at nu=%r" % (nu,))
        qvecs = [[sum(c * qvecs[r][i] for r, c in enumerate(crow) if c)
                  for i in range(nuk)] for crow in cut]
        wvecs = [_phi_combine(alg, nu, phi_vals, vecu) for vecu in qvecs]
    if len(qvecs) != d:
        raise CBError(
            "ansatz window exhausted at nu=%r: descent ended at rank "
            "%d, expected %d" % (nu, len(qvecs), d))
    # on the remaining lattice every pairing has degree <= 0; the
    # constant term is positive definite, so the unit vectors live in
    # a finite box
    gq = [[dict(gram[a][b].series_upper()).get(0, Fraction(0))
           if gram[a][b] else Fraction(0) for b in range(d)]
          for a in range(d)]
    ginv = mat_inverse(gq, Fraction(0), Fraction(1))
    if ginv is None or any(ginv[r][r] <= 0 for r in range(d)):
        raise CBError("norm form not positive definite at nu=%r" % (nu,))
    bounds = [math.isqrt(int(ginv[r][r])) for r in range(d)]
    points = []
    for q in _int_box(bounds):
        norm = sum(gq[a][b] * q[a] * q[b]
                   for a in range(d) for b in range(d))
        if norm == 1:
            points.append(q)
    points = sorted(set(points))
    if len(points) != 2 * d:
        raise CBError(
            "ansatz window exhausted at nu=%r: %d almost-orthonormal "
            "lattice points, expected %d" % (nu, len(points), 2 * d))
    picked = []
    seen = set()
    for pt in points:
        if tuple(-q for q in pt) in seen:
            continue
        seen.add(pt)
        vecu = [0] * nuk
        for t, c in enumerate(pt):
            if c:
                for i in range(nuk):
                    vecu[i] += c * qvecs[t][i]
        exp = {}
        for li in range(nm):
            poly = ZERO
            for k in range(window + 1):
                n = vecu[li * (window + 1) + k]
                if n:
                    poly = poly + _s_poly(k).scale(n)
            if poly:
                exp[monomials[li]] = poly
        vec = _expansion_vector(alg, exp)
        if _cb_sign(alg, nu, vec) < 0:
            vec = vec.scale(-1)
            exp = {k: c.scale(-1) for k, c in exp.items()}
        picked.append((exp, vec))
    elements = _profile_sort(alg, nu, [
        CBElement((nu, k), vec, exp)
        for k, (exp, vec) in enumerate(picked)])
    _certify(alg, nu, elements)
    _fill_string_stats(alg, elements)
    return elements
