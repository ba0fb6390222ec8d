"""Tensor products of weight modules and their canonical bases.

A TensorSpace wraps an ordered tuple of module references over one root
datum.  Vectors are finite sums of pure tensors of factor basis vectors,
keyed by per-factor labels (nu, slot); the generator action follows the
comultiplication E |-> E ox 1 + K ox E, F |-> 1 ox F + F ox K^{-1},
K ox K, applied factorwise with the weight twists evaluated exactly.

The quasi-R-matrix Theta = sum over nu of (-v)^{tr nu} sum_b b^- ox b^{*+}
is applied with its nu-sum truncated exactly: the sum is capped by the
grade box of whichever side acts towards the generating vector, so every
discarded term vanishes identically.  The bar involution Psi composes
Theta with the factorwise bar (which fixes the stored bases) and is
extended to longer products by splitting off the last factor.

Diamond basis elements are solved on one weight component at a time.
The component's pure tensors are totally ordered so that Psi is
unitriangular, and each coefficient equation c - bar(c) = g is solved by
taking the strictly negative part of g, walking the order away from the
leading label.  The same solver assembles n-fold bases by replacing pure
tensors with (prefix diamond) ox (last factor unit) candidates.
"""

import itertools

from .coeff import LaurentPoly, RationalFn, ONE, R_ZERO, R_ONE, \
    quantum_factorial
from .cbasis import canonical_basis, expander_for
from .modules import ModuleRef, ModuleError, act as _module_act


class TensorError(RuntimeError):
    pass


def _vpow(n):
    return RationalFn(LaurentPoly({n: 1}))


_V_MINUS_VINV = RationalFn(LaurentPoly({1: 1, -1: -1}))

_VARIANTS = {
    (ModuleRef.SIMPLE_LW, ModuleRef.SIMPLE_HW): "LWHW",
    (ModuleRef.SIMPLE_HW, ModuleRef.SIMPLE_HW): "HWHW",
    (ModuleRef.SIMPLE_LW, ModuleRef.SIMPLE_LW): "LWLW",
    (ModuleRef.VERMA_HW, ModuleRef.SIMPLE_HW): "VermaHW",
}


def _compositions(total, slots):
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def _duals(alg, nu):
    """Dual basis of the canonical basis at nu, cached on the algebra."""
    cache = getattr(alg, "_dual_cache", None)
    if cache is None:
        cache = alg._dual_cache = {}
    nu = tuple(nu)
    hit = cache.get(nu)
    if hit is None:
        vecs = [b.vector for b in canonical_basis(alg, nu)]
        hit = cache[nu] = alg.dual_basis(nu, vecs)
    return hit


class TensorSpace:
    """An ordered tensor product of module references."""

    def __init__(self, factors, _min_depth=0):
        factors = tuple(factors)
        if not factors:
            raise TensorError("empty factor list")
        for f in factors:
            if f.kind in (ModuleRef.DEMAZURE_HW, ModuleRef.DEMAZURE_LW):
                raise TensorError(
                    "tensor factors must be Verma or simple modules; "
                    "restrict labels to a Demazure subset instead")
        datum = factors[0].datum
        for f in factors[1:]:
            if f.datum != datum:
                raise TensorError("factors live over different root data")
        self.datum = datum
        self.factors = factors
        self.n = len(factors)
        self._levels = tuple(self._scan_levels(f) for f in factors)
        # room for every quasi-R excursion, legs included
        floor = max(sum(sum(lv[-1]) for lv in self._levels) + 2, _min_depth)
        self._work = tuple(
            ModuleRef(f.kind, datum, max(f.depth, floor),
                      zeta=f.zeta, lam=f.lam)
            for f in factors)
        self.alg = max(self._work, key=lambda r: r.depth).alg
        kinds = tuple(f.kind for f in factors)
        self.variant = _VARIANTS.get(kinds) if self.n == 2 else None
        self._legs = {}
        self._theta = {}
        self._diamonds = {}
        self._components = {}

    @staticmethod
    def _scan_levels(ref):
        """Grades with a nonzero basis, scanned level by level."""
        rank = ref.datum.cartan.rank
        out = [(0,) * rank]
        for t in range(1, ref.depth + 1):
            lvl = [nu for nu in _compositions(t, rank)
                   if ref.weight_basis(nu)]
            if not lvl:
                break
            out.extend(lvl)
        return tuple(out)

    # -- identity ----------------------------------------------------------

    def _sig(self):
        return tuple((f._sig(), f.depth) for f in self.factors)

    def __eq__(self, other):
        return isinstance(other, TensorSpace) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        return "TensorSpace(%s)" % ", ".join(f.kind for f in self.factors)

    # -- slices ------------------------------------------------------------

    def leg(self, a, b):
        key = (a, b)
        hit = self._legs.get(key)
        if hit is None:
            if b - a == self.n:
                hit = self
            else:
                hit = TensorSpace(self.factors[a:b],
                                  max(r.depth for r in self._work))
            self._legs[key] = hit
        return hit

    @property
    def prefix(self):
        return self.leg(0, self.n - 1)

    @property
    def suffix(self):
        return self.leg(1, self.n)

    # -- labels and vectors ------------------------------------------------

    def labels_at(self, j):
        """All labels of factor j within its depth."""
        out = []
        for nu in self._levels[j]:
            for k in range(len(self._work[j].weight_basis(nu))):
                out.append((nu, k))
        return out

    def factor_unit(self, j, label):
        return self._work[j].unit(label[0], label[1])

    def factor_basis(self, j, nu):
        return self._work[j].weight_basis(nu)

    def factor_weight(self, j, label):
        return self._work[j].weight_of(label[0])

    def weight_of(self, labels):
        wt = self.datum.zero_weight()
        for j, lab in enumerate(labels):
            wt = wt + self.factor_weight(j, lab)
        return wt

    def _norm_labels(self, labels):
        labels = tuple((tuple(g), int(k)) for g, k in labels)
        if len(labels) != self.n:
            raise TensorError("expected %d factor labels, got %d"
                              % (self.n, len(labels)))
        for j, (nu, k) in enumerate(labels):
            els = self._work[j].weight_basis(nu)
            if not 0 <= k < len(els):
                raise TensorError("no basis slot %d at grade %r in factor %d"
                                  % (k, nu, j))
        return labels

    def zero(self):
        return TensorVector(self, {})

    def unit(self, labels):
        return TensorVector(self, {self._norm_labels(labels): R_ONE})

    def component(self, weight):
        """Pure tensor labels of the given total weight, solver-ordered."""
        key = tuple(weight.coords)
        hit = self._components.get(key)
        if hit is None:
            found = []
            for combo in itertools.product(
                    *(self.labels_at(j) for j in range(self.n))):
                if self.weight_of(combo) == weight:
                    found.append(combo)
            found.sort(key=lambda L: _key_left(self, L))
            hit = self._components[key] = tuple(found)
        return hit


class TensorVector:
    """A finite sum of pure tensors with RationalFn coefficients."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms):
        self.space = space
        clean = {}
        for lab, c in terms.items():
            if not isinstance(c, RationalFn):
                c = RationalFn(c)
            if c:
                clean[lab] = c
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def weight(self):
        wts = {self.space.weight_of(lab) for lab in self.terms}
        if not wts:
            return None
        if len(wts) > 1:
            raise TensorError("mixed-weight vector")
        return wts.pop()

    def scale(self, c):
        if not isinstance(c, RationalFn):
            c = RationalFn(c)
        if not c:
            return self.space.zero()
        return TensorVector(self.space,
                            {lab: cc * c for lab, cc in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        if self.space != other.space:
            raise TensorError("vectors from different tensor spaces")
        out = dict(self.terms)
        for lab, c in other.terms.items():
            cur = out.get(lab)
            out[lab] = c if cur is None else cur + c
        return TensorVector(self.space, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorVector(self.space,
                            {lab: -c for lab, c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, TensorVector)
                and self.space == other.space and self.terms == other.terms)

    def __hash__(self):
        return hash((self.space, tuple(self.support())))

    def __repr__(self):
        if not self.terms:
            return "TensorVector(0)"
        return "TensorVector(%d terms at %r)" % (
            len(self.terms), next(iter(self.terms)))


# -- generator action ------------------------------------------------------

def _wrap_depth(exc):
    if "depth exceeded" in str(exc):
        return TensorError("degree bound: %s" % exc)
    return exc


def _act_single(space, name, i, t):
    """One E_i or F_i through the comultiplication."""
    datum = space.datum
    out = {}
    for labels, c in t.terms.items():
        wts = [space.factor_weight(j, labels[j]) for j in range(space.n)]
        for j in range(space.n):
            mv = _module_act((name, i), space.factor_unit(j, labels[j]))
            if mv.is_zero():
                continue
            if name == "E":
                tw = sum(datum.pair(i, wts[k]) for k in range(j))
            else:
                tw = -sum(datum.pair(i, wts[k])
                          for k in range(j + 1, space.n))
            coef = c * _vpow(tw)
            for k, cc in mv.support():
                nl = labels[:j] + ((mv.nu, k),) + labels[j + 1:]
                cur = out.get(nl)
                add = coef * cc
                out[nl] = add if cur is None else cur + add
    return TensorVector(space, out)


def act(gen, t):
    """Apply a generator to a tensor vector.

    The same generator tuples as for module vectors are accepted:
    ("F", i), ("F", i, n), ("E", i), ("E", i, n), ("K", mu),
    ("xminus", x), ("xplus", x).
    """
    space = t.space
    name = gen[0]
    try:
        if space.n == 1:
            out = {}
            for (lab,), c in t.terms.items():
                mv = _module_act(gen, space.factor_unit(0, lab))
                if mv.is_zero():
                    continue
                for k, cc in mv.support():
                    key = ((mv.nu, k),)
                    cur = out.get(key)
                    add = c * cc
                    out[key] = add if cur is None else cur + add
            return TensorVector(space, out)
        if name == "K":
            mu = gen[1]
            if mu in space.datum.embedY:
                mu = space.datum.embedY[mu]
            mu = tuple(mu)
            if len(mu) != space.datum.rankY:
                raise TensorError("K index has %d coordinates, expected %d"
                                  % (len(mu), space.datum.rankY))
            out = {}
            for labels, c in t.terms.items():
                wt = space.weight_of(labels)
                out[labels] = c * _vpow(space.datum._pair_vec(mu, wt.coords))
            return TensorVector(space, out)
        if name in ("E", "F"):
            i = gen[1]
            nn = gen[2] if len(gen) > 2 else 1
            if nn < 0:
                raise TensorError("negative divided power")
            out = t
            for _ in range(nn):
                out = _act_single(space, name, i, out)
                if out.is_zero():
                    return out
            if nn > 1:
                out = out.scale(RationalFn(ONE, quantum_factorial(nn)))
            return out
        if name in ("xminus", "xplus"):
            x = gen[1]
            direction = "F" if name == "xminus" else "E"
            return _act_pivots(direction, x.alg, x, t)
        raise TensorError("unknown generator %r" % (name,))
    except ModuleError as e:
        raise _wrap_depth(e)


def _act_runs(direction, expansion, t):
    """A divided word expansion, rightmost run acting first."""
    total = t.space.zero()
    for letters, c in expansion.items():
        cur = t
        for lab, k in reversed(letters):
            cur = act((direction, lab, k), cur)
            if cur.is_zero():
                break
        if not cur.is_zero():
            total = total + cur.scale(RationalFn(c))
    return total


def _act_pivots(direction, alg, x, t):
    """An FVector through single letters, leftmost letter outermost."""
    ws = alg.weight_space(x.nu)
    gens = alg.cartan.gens
    total = t.space.zero()
    for a, ca in x.support():
        cur = t
        for kx in reversed(ws.pivots[a]):
            cur = act((direction, gens[kx]), cur)
            if cur.is_zero():
                break
        if not cur.is_zero():
            total = total + cur.scale(ca)
    return total


# -- quasi-R-matrix and Psi ------------------------------------------------

def _theta_bound(space, labels, cut):
    """Componentwise cap on the nu-sum, None coordinatewise combined."""
    rank = space.datum.cartan.rank
    cap = None
    if all(f.kind == ModuleRef.SIMPLE_LW for f in space.factors[:cut]):
        cap = tuple(sum(lab[0][r] for lab in labels[:cut])
                    for r in range(rank))
    if all(f.kind == ModuleRef.SIMPLE_HW for f in space.factors[cut:]):
        other = tuple(sum(lab[0][r] for lab in labels[cut:])
                      for r in range(rank))
        cap = other if cap is None else tuple(map(min, cap, other))
    if cap is None:
        raise TensorError(
            "degree bound: quasi-R sum does not terminate for %r"
            % (tuple(f.kind for f in space.factors),))
    return cap


def _theta_pure(space, labels, cut):
    key = (labels, cut)
    hit = space._theta.get(key)
    if hit is not None:
        return hit
    bound = _theta_bound(space, labels, cut)
    lega = space.leg(0, cut)
    legb = space.leg(cut, space.n)
    ua = lega.unit(labels[:cut])
    ub = legb.unit(labels[cut:])
    alg = space.alg
    acc = {labels: R_ONE}
    nus = sorted((nu for nu in itertools.product(
        *(range(c + 1) for c in bound)) if any(nu)),
        key=lambda nu: (sum(nu), nu))
    for nu in nus:
        cbl = canonical_basis(alg, nu)
        dl = _duals(alg, nu)
        sgn = RationalFn(LaurentPoly({sum(nu): -1 if sum(nu) % 2 else 1}))
        for b, bs in zip(cbl, dl):
            va = _act_runs("F", b.expansion, ua)
            if va.is_zero():
                continue
            vb = _act_pivots("E", alg, bs, ub)
            if vb.is_zero():
                continue
            for la, ca in va.terms.items():
                ca = ca * sgn
                for lb, cb in vb.terms.items():
                    full = la + lb
                    cur = acc.get(full)
                    add = ca * cb
                    acc[full] = add if cur is None else cur + add
    hit = TensorVector(space, acc)
    space._theta[key] = hit
    return hit


def _theta(t, cut):
    out = t.space.zero()
    for labels, c in t.terms.items():
        out = out + _theta_pure(t.space, labels, cut).scale(c)
    return out


def quasi_R(t):
    """Theta applied at the split before the last factor."""
    space = t.space
    if space.n < 2:
        raise TensorError("quasi-R needs at least two factors")
    try:
        return _theta(t, space.n - 1)
    except ModuleError as e:
        raise _wrap_depth(e)


def psi_involution(t):
    """The bar involution Psi, built from Theta and factorwise bars."""
    space = t.space
    try:
        if space.n == 1:
            return TensorVector(
                space, {lab: c.bar() for lab, c in t.terms.items()})
        groups = {}
        for labels, c in t.terms.items():
            groups.setdefault(labels[-1], {})[labels[:-1]] = c
        out = space.zero()
        for last, pterms in groups.items():
            pv = psi_involution(TensorVector(space.prefix, pterms))
            attached = TensorVector(
                space, {pl + (last,): c for pl, c in pv.terms.items()})
            out = out + _theta(attached, space.n - 1)
        return out
    except ModuleError as e:
        raise _wrap_depth(e)


def _psi_right(t):
    """Psi assembled by splitting off the first factor instead."""
    space = t.space
    if space.n == 1:
        return TensorVector(space,
                            {lab: c.bar() for lab, c in t.terms.items()})
    groups = {}
    for labels, c in t.terms.items():
        groups.setdefault(labels[0], {})[labels[1:]] = c
    out = space.zero()
    for first, sterms in groups.items():
        sv = _psi_right(TensorVector(space.suffix, sterms))
        attached = TensorVector(
            space, {(first,) + sl: c for sl, c in sv.terms.items()})
        out = out + _theta(attached, 1)
    return out


# -- diamond solver --------------------------------------------------------

def _key_left(space, labels):
    """Total order making Psi unitriangular, last factor leading."""
    if space.n == 1:
        nu, k = labels[0]
        return ((sum(nu), nu, k),)
    nu, k = labels[-1]
    s = -1 if space.factors[-1].kind == ModuleRef.SIMPLE_LW else 1
    head = (s * sum(nu), tuple(s * a for a in nu), k)
    return (head,) + _key_left(space.prefix, labels[:-1])


def _key_right(space, labels):
    if space.n == 1:
        nu, k = labels[0]
        return ((sum(nu), nu, k),)
    nu, k = labels[0]
    s = 1 if space.factors[0].kind == ModuleRef.SIMPLE_LW else -1
    head = (s * sum(nu), tuple(s * a for a in nu), k)
    return (head,) + _key_right(space.suffix, labels[1:])


class DiamondElement:
    """A canonical basis element of a tensor product."""

    __slots__ = ("labels", "vector")

    def __init__(self, labels, vector):
        self.labels = labels
        self.vector = vector

    @property
    def space(self):
        return self.vector.space

    def coefficient(self, labels):
        return self.vector.terms.get(
            tuple((tuple(g), int(k)) for g, k in labels), R_ZERO)

    def __eq__(self, other):
        return (isinstance(other, DiamondElement)
                and self.labels == other.labels
                and self.vector == other.vector)

    def __hash__(self):
        return hash((self.labels, self.vector))

    def __repr__(self):
        return "DiamondElement(%r, %d terms)" % (
            self.labels, len(self.vector.terms))


def _cand_vector(space, labels, side):
    if space.n == 2:
        return space.unit(labels)
    if side == "left":
        d = _diamond(space.prefix, labels[:-1], side)
        return TensorVector(
            space,
            {pl + (labels[-1],): c for pl, c in d.vector.terms.items()})
    d = _diamond(space.suffix, labels[1:], side)
    return TensorVector(
        space, {(labels[0],) + sl: c for sl, c in d.vector.terms.items()})


def _peel(space, tv, keyf, side, index):
    """Coordinates of tv over the candidate vectors of the component."""
    if space.n == 2:
        for lab in tv.terms:
            if lab not in index:
                raise TensorError(
                    "degree bound: component misses %r" % (lab,))
        return dict(tv.terms)
    rem = dict(tv.terms)
    out = {}
    while rem:
        lab = max(rem, key=keyf)
        if lab not in index:
            raise TensorError("degree bound: component misses %r" % (lab,))
        c = rem.pop(lab)
        out[lab] = c
        for l2, cc in _cand_vector(space, lab, side).terms.items():
            if l2 == lab:
                continue
            cur = rem.get(l2, R_ZERO) - c * cc
            if cur:
                rem[l2] = cur
            elif l2 in rem:
                del rem[l2]
    return out


def _neg_part(g, where):
    gl = g.as_laurent()
    if gl is None:
        raise TensorError(
            "non-triangular Psi-matrix: non-Laurent equation at %r"
            % (where,))
    if gl.bar() != -gl:
        raise TensorError(
            "non-triangular Psi-matrix: bar equation fails at %r"
            % (where,))
    return RationalFn(LaurentPoly(
        {e: a for e, a in gl.terms.items() if e < 0}))


def _check_diamond(space, labels, vec, side):
    ps = psi_involution(vec) if side == "left" else _psi_right(vec)
    if ps != vec:
        raise TensorError("Psi fixed point check failed at %r" % (labels,))
    for lab, c in vec.terms.items():
        if lab == labels:
            if c != R_ONE:
                raise TensorError("leading coefficient %r at %r"
                                  % (c, labels))
            continue
        lt = c.as_laurent()
        if lt is None or lt.degree() >= 0:
            raise TensorError(
                "coefficient outside v^-1 Z[v^-1] at %r" % (lab,))


def _diamond(space, labels, side):
    labels = space._norm_labels(labels)
    key = (labels, side)
    hit = space._diamonds.get(key)
    if hit is not None:
        return hit
    if space.n == 1:
        hit = DiamondElement(labels, space.unit(labels))
        space._diamonds[key] = hit
        return hit
    comp = space.component(space.weight_of(labels))
    index = set(comp)
    if labels not in index:
        raise TensorError(
            "degree bound: %r outside the enumerated component" % (labels,))
    keyf = ((lambda L: _key_left(space, L)) if side == "left"
            else (lambda L: _key_right(space, L)))
    cut = space.n - 1 if side == "left" else 1
    tkey = keyf(labels)
    acc = {}
    pi = {}
    try:
        for lab in sorted(comp, key=keyf, reverse=True):
            if lab == labels:
                if acc.get(lab):
                    raise TensorError(
                        "non-triangular Psi-matrix at %r" % (lab,))
                c = R_ONE
            else:
                c = _neg_part(acc.get(lab, R_ZERO), lab)
                if not c:
                    continue
                if keyf(lab) > tkey:
                    raise TensorError(
                        "non-triangular Psi-matrix at %r" % (lab,))
            pi[lab] = c
            coords = _peel(space, _theta(_cand_vector(space, lab, side), cut),
                           keyf, side, index)
            kl = keyf(lab)
            cb = c.bar()
            for l2, r in coords.items():
                if l2 != lab and keyf(l2) > kl:
                    raise TensorError(
                        "non-triangular Psi-matrix at %r" % (l2,))
                cur = acc.get(l2)
                add = cb * r
                acc[l2] = add if cur is None else cur + add
    except ModuleError as e:
        raise _wrap_depth(e)
    out = space.zero()
    for lab, c in pi.items():
        out = out + _cand_vector(space, lab, side).scale(c)
    _check_diamond(space, labels, out, side)
    hit = DiamondElement(labels, out)
    space._diamonds[key] = hit
    return hit


def diamond(space, labels):
    """The canonical basis element of a two factor tensor product."""
    if space.variant is None:
        raise TensorError(
            "unsupported variant %r" % (tuple(f.kind for f in space.factors),))
    return _diamond(space, labels, "left")


def nfold_diamond(space, labels, check_bracketing=False):
    """The canonical basis element of an iterated tensor product.

    Factors must be a run of simple lowest weight modules followed by a
    run of simple highest weight modules.  With check_bracketing the
    element is recomputed with the opposite bracketing and compared.
    """
    if space.n < 2:
        raise TensorError("need at least two factors")
    kinds = [f.kind for f in space.factors]
    m = 0
    while m < len(kinds) and kinds[m] == ModuleRef.SIMPLE_LW:
        m += 1
    if any(k != ModuleRef.SIMPLE_HW for k in kinds[m:]):
        raise TensorError("factors must be lowest weight then highest weight")
    d = _diamond(space, labels, "left")
    if check_bracketing and space.n >= 3:
        dr = _diamond(space, labels, "right")
        if dr.vector != d.vector:
            raise TensorError("bracketing mismatch at %r" % (labels,))
    return d


def transition_matrix(space, weight):
    """Rows expand diamond elements over the pure tensors of a weight.

    Returns (labels, entries) with entries[r][c] the coefficient of the
    pure tensor labels[c] in the diamond element at labels[r]; with the
    labels in solver order the matrix is lower unitriangular.
    """
    if space.variant is None:
        raise TensorError(
            "unsupported variant %r" % (tuple(f.kind for f in space.factors),))
    if not hasattr(weight, "coords"):
        weight = space.datum.weight(weight)
    comp = space.component(weight)
    entries = []
    for row in comp:
        vec = _diamond(space, row, "left").vector
        entries.append([vec.terms.get(col, R_ZERO) for col in comp])
    return comp, entries


# -- chi twist and epsilon -------------------------------------------------

def chi_twist(t, target=None):
    """Swap the factors of a lowest ox highest tensor with the omega twist.

    In stored coordinates the map exchanges the two labels; the target
    space has the highest weights interchanged.
    """
    space = t.space
    if space.variant != "LWHW":
        raise TensorError("chi twist needs a lowest ox highest product")
    lam1 = space.factors[0].lam
    lam2 = space.factors[1].lam
    if target is None:
        target = TensorSpace((
            ModuleRef.simple_lw(space.datum, lam2, space.factors[1].depth),
            ModuleRef.simple_hw(space.datum, lam1, space.factors[0].depth)))
    else:
        if target.variant != "LWHW":
            raise TensorError("chi target must be a lowest ox highest product")
        if (target.factors[0].lam != lam2 or target.factors[1].lam != lam1):
            raise TensorError("chi target weights do not match")
    out = {(l2, l1): c for (l1, l2), c in t.terms.items()}
    return TensorVector(target, out)


def epsilon_op(i, t):
    """The twisted derivation on a Verma ox highest tensor product."""
    space = t.space
    if space.variant != "VermaHW":
        raise TensorError("epsilon needs a Verma ox highest product")
    alg = space.alg
    verma = space._work[0]
    out = space.zero()
    try:
        for (l1, l2), c in t.terms.items():
            el = space.factor_basis(0, l1[0])[l1[1]]
            m2 = space.factor_unit(1, l2)
            wt2 = space.factor_weight(1, l2)
            irx = alg.i_r(i, el.vector)
            if not irx.is_zero():
                coords = expander_for(alg, irx.nu).reduce_vector(irx)
                mv = verma.vector(irx.nu, coords)
                if not mv.is_zero():
                    ck = c * _vpow(-space.datum.pair(i, wt2))
                    terms = {((mv.nu, k), l2): ck * cc
                             for k, cc in mv.support()}
                    out = out + TensorVector(space, terms)
            em2 = _module_act(("E", i), m2)
            if not em2.is_zero():
                wte = wt2 + space.datum.alphaX(i)
                ck = c * _V_MINUS_VINV * _vpow(-space.datum.pair(i, wte))
                terms = {(l1, (em2.nu, k)): ck * cc
                         for k, cc in em2.support()}
                out = out + TensorVector(space, terms)
    except ModuleError as e:
        raise _wrap_depth(e)
    return out


def tensor_inner_product(t1, t2):
    """The product form, factorwise inner products multiplied."""
    from .modules import module_inner_product
    if t1.space != t2.space:
        raise TensorError("vectors from different tensor spaces")
    space = t1.space
    total = R_ZERO
    for la, ca in t1.terms.items():
        for lb, cb in t2.terms.items():
            p = ca * cb
            for j in range(space.n):
                if la[j][0] != lb[j][0]:
                    p = R_ZERO
                    break
                p = p * module_inner_product(space.factor_unit(j, la[j]),
                                             space.factor_unit(j, lb[j]))
                if not p:
                    break
            if p:
                total = total + p
    return total
