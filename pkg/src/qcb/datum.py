"""Cartan data, root data, Weyl words, and the thickening construction.

A RootDatum fixes coordinates: Y = Z^rankY, X = Z^rankX, a perfect
pairing matrix P (so <mu, lam> = mu^T P lam), and embeddings of the
generator set I into both sides.  The thickened datum adjoins one primed
generator per original one and extends everything blockwise.
"""

from fractions import Fraction
import json

from ._linalg import bareiss_det, mat_rank, mat_solve

F0, F1 = Fraction(0), Fraction(1)


class DatumError(ValueError):
    """A datum invariant is violated; message names the first violation."""


class CartanDatum:
    """Generator labels with a symmetric integer form i.j."""

    def __init__(self, gens, form):
        self.gens = tuple(gens)
        self.form = tuple(tuple(int(x) for x in row) for row in form)
        self._index = {g: k for k, g in enumerate(self.gens)}
        self._validate()

    def _validate(self):
        n = len(self.gens)
        if len(self._index) != n:
            raise DatumError("generator labels not distinct")
        if len(self.form) != n or any(len(r) != n for r in self.form):
            raise DatumError("cartan form is not a square matrix over I")
        for a in range(n):
            if self.form[a][a] != 2:
                raise DatumError("cartan form has i.i != 2 at %r" % (self.gens[a],))
            for b in range(n):
                if self.form[a][b] != self.form[b][a]:
                    raise DatumError("cartan form not symmetric")
                if a != b and self.form[a][b] > 0:
                    raise DatumError("cartan form has positive off-diagonal entry")

    def index(self, i):
        return self._index[i]

    def dot(self, i, j):
        return self.form[self._index[i]][self._index[j]]

    @property
    def rank(self):
        return len(self.gens)

    def __eq__(self, other):
        return (isinstance(other, CartanDatum)
                and self.gens == other.gens and self.form == other.form)

    def __hash__(self):
        return hash((self.gens, self.form))

    def __repr__(self):
        return "CartanDatum(%r)" % (self.gens,)


class Weight:
    """An integer coordinate vector in an X-basis (or X-tilde basis)."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(int(c) for c in coords)

    def __add__(self, other):
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return Weight(-a for a in self.coords)

    def scale(self, n):
        return Weight(n * a for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "Weight(%r)" % (list(self.coords),)


class WeylWord:
    """A word in the simple reflections, as a tuple of generator labels."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        self.letters = tuple(letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, WeylWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "WeylWord(%r)" % (list(self.letters),)


class RootDatum:

    def __init__(self, cartan, rankY, rankX, pairing, embedY, embedX,
                 validate=True):
        self.cartan = cartan
        self.rankY = int(rankY)
        self.rankX = int(rankX)
        self.pairing = tuple(tuple(int(x) for x in row) for row in pairing)
        self.embedY = {i: tuple(int(x) for x in embedY[i]) for i in cartan.gens}
        self.embedX = {i: tuple(int(x) for x in embedX[i]) for i in cartan.gens}
        # thickening bookkeeping, set by thicken()
        self.base = None
        self.prime_of = None
        self.unprime = None
        if validate:
            self._validate()

    def _validate(self):
        if len(self.pairing) != self.rankY or any(
                len(r) != self.rankX for r in self.pairing):
            raise DatumError("pairing matrix shape is not rankY x rankX")
        if self.rankY != self.rankX:
            raise DatumError("pairing not perfect: rankY != rankX")
        if abs(bareiss_det([list(r) for r in self.pairing])) != 1:
            raise DatumError("pairing not perfect: determinant not a unit")
        for i in self.cartan.gens:
            if len(self.embedY[i]) != self.rankY:
                raise DatumError("embedY[%r] has wrong length" % (i,))
            if len(self.embedX[i]) != self.rankX:
                raise DatumError("embedX[%r] has wrong length" % (i,))
        for i in self.cartan.gens:
            for j in self.cartan.gens:
                if self._pair_vec(self.embedY[i], self.embedX[j]) \
                        != self.cartan.dot(i, j):
                    raise DatumError(
                        "pairing <%r,%r> disagrees with cartan form" % (i, j))
        cols = [[Fraction(self.embedY[i][k]) for i in self.cartan.gens]
                for k in range(self.rankY)]
        if mat_rank(cols, F0, F1) != len(self.cartan.gens):
            raise DatumError("image of I in Y not linearly independent")

    # -- pairing -----------------------------------------------------------

    def _pair_vec(self, mu, lam):
        s = 0
        for a, row in zip(mu, self.pairing):
            if a:
                for b, p in zip(lam, row):
                    s += a * p * b
        return s

    def pair(self, i, lam):
        """<i, lam> for a generator label i and a Weight lam."""
        return self._pair_vec(self.embedY[i], lam.coords)

    def alphaX(self, i):
        """The image of generator i in X, as a Weight."""
        return Weight(self.embedX[i])

    def zero_weight(self):
        return Weight([0] * self.rankX)

    def weight(self, coords):
        coords = tuple(coords)
        if len(coords) != self.rankX:
            raise DatumError("weight has %d coords, expected %d"
                             % (len(coords), self.rankX))
        return Weight(coords)

    def dominant(self, lam):
        return all(self.pair(i, lam) >= 0 for i in self.cartan.gens)

    # -- Weyl group action -------------------------------------------------

    def reflect_root(self, j, alpha):
        """s_j acting on alpha in Z[I] (tuple over cartan.gens)."""
        jx = self.cartan.index(j)
        c = sum(a * self.cartan.form[k][jx] for k, a in enumerate(alpha))
        return tuple(a - c * (1 if k == jx else 0)
                     for k, a in enumerate(alpha))

    def winv_on_root(self, w, alpha):
        """w^-1 applied to alpha in Z[I]."""
        for letter in w.letters:
            alpha = self.reflect_root(letter, alpha)
        return alpha

    def w_on_weight(self, w, lam):
        """w applied to a Weight in X."""
        for letter in reversed(w.letters):
            c = self.pair(letter, lam)
            if c:
                lam = lam - self.alphaX(letter).scale(c)
        return lam

    def simple_root_vec(self, i):
        return tuple(1 if g == i else 0 for g in self.cartan.gens)

    def descent(self, i, w):
        """True iff s_i w < w, via the sign of w^-1(alpha_i)."""
        r = self.winv_on_root(w, self.simple_root_vec(i))
        return all(c <= 0 for c in r)

    def demazure_product(self, w1, w2):
        result = w2
        for letter in reversed(w1.letters):
            if not self.descent(letter, result):
                result = WeylWord((letter,) + result.letters)
        return result

    def words_equal(self, w1, w2):
        """Equality as Weyl group elements (faithful reflection action)."""
        for i in self.cartan.gens:
            e = self.simple_root_vec(i)
            if self.winv_on_root(w1, e) != self.winv_on_root(w2, e):
                return False
        return True

    def __repr__(self):
        return "RootDatum(%r)" % (self.cartan.gens,)


def simply_connected_datum(cartan):
    """Default datum: Y = Z[I], X = Y*, identity pairing."""
    n = cartan.rank
    eye = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    embedY = {i: eye[cartan.index(i)] for i in cartan.gens}
    embedX = {i: [cartan.form[k][cartan.index(i)] for k in range(n)]
              for i in cartan.gens}
    return RootDatum(cartan, n, n, eye, embedY, embedX)


def is_spherical(J, cartan):
    """True iff the submatrix (j.j') over J is positive definite."""
    J = list(J)
    for j in J:
        if j not in cartan.gens:
            raise DatumError("unknown generator %r" % (j,))
    sub = [[cartan.dot(a, b) for b in J] for a in J]
    for k in range(1, len(J) + 1):
        if bareiss_det([row[:k] for row in sub[:k]]) <= 0:
            return False
    return True


def _prime(label):
    return "%s'" % (label,)


def thicken(d):
    """The thickened root datum on I-tilde = I + I'.

    New form entries: i.j' = -delta_ij, i'.j' = 2 delta_ij.  Y gains a
    free summand Z[I'], X gains its dual, and the pairing extends by the
    identity block.  The result keeps a reference to the base datum and
    the label correspondence for odot and the iterated tower.
    """
    base_gens = d.cartan.gens
    n = len(base_gens)
    primes = []
    taken = set(base_gens)
    for i in base_gens:
        p = _prime(i)
        while p in taken:
            p = _prime(p)
        primes.append(p)
        taken.add(p)
    primes = tuple(primes)
    gens = base_gens + primes
    m = len(gens)
    form = [[0] * m for _ in range(m)]
    for a in range(n):
        for b in range(n):
            form[a][b] = d.cartan.dot(base_gens[a], base_gens[b])
    for a in range(n):
        form[a][n + a] = form[n + a][a] = -1
        form[n + a][n + a] = 2
    cartan = CartanDatum(gens, form)

    rankY = d.rankY + n
    rankX = d.rankX + n
    pairing = [[0] * rankX for _ in range(rankY)]
    for a in range(d.rankY):
        for b in range(d.rankX):
            pairing[a][b] = d.pairing[a][b]
    for a in range(n):
        pairing[d.rankY + a][d.rankX + a] = 1

    embedY = {}
    embedX = {}
    for k, i in enumerate(base_gens):
        embedY[i] = list(d.embedY[i]) + [0] * n
        # <j', embedX(i)> must equal j'.i = -delta_ij
        embedX[i] = list(d.embedX[i]) + [-1 if t == k else 0 for t in range(n)]
    # X-part x of embedX(i') solves embedY(j)^T P x = -delta_ij for j in I
    rows = [[Fraction(sum(d.embedY[j][a] * d.pairing[a][b]
                          for a in range(d.rankY)))
             for b in range(d.rankX)] for j in base_gens]
    for k, i in enumerate(base_gens):
        rhs = [F1 * (-1 if t == k else 0) for t in range(n)]
        x = mat_solve(rows, rhs, F0, F1)
        if x is None or any(c.denominator != 1 for c in x):
            raise DatumError("no integral thickening for embedX[%r']" % (i,))
        embedY[primes[k]] = [0] * d.rankY + [1 if t == k else 0
                                             for t in range(n)]
        embedX[primes[k]] = [int(c) for c in x] + [2 if t == k else 0
                                                   for t in range(n)]
    out = RootDatum(cartan, rankY, rankX, pairing, embedY, embedX)
    out.base = d
    out.prime_of = dict(zip(base_gens, primes))
    out.unprime = dict(zip(primes, base_gens))
    return out


def embed_weight(td, lam):
    """A base weight viewed in the thickened X (zero on the new block)."""
    _require_thickened(td)
    return Weight(tuple(lam.coords) + (0,) * (td.rankX - td.base.rankX))


def _require_thickened(td):
    if td.base is None:
        raise DatumError("operation needs a thickened datum")


def odot(zeta, lam, td):
    """The weight zeta (*) lam in X-tilde.

    Characterized by <mu, zeta odot lam> = <mu, zeta + lam + |theta_lam|>
    for mu in Y and <i', zeta odot lam> = <i, lam>; in particular its
    base pairings agree with zeta.  lam must be dominant in the base.
    """
    _require_thickened(td)
    d = td.base
    if not d.dominant(lam):
        raise DatumError("odot needs a dominant lambda")
    pairs = [d.pair(i, lam) for i in d.cartan.gens]
    xpart = [a + b for a, b in zip(zeta.coords, lam.coords)]
    for k, i in enumerate(d.cartan.gens):
        if pairs[k]:
            xi = td.embedX[td.prime_of[i]][:d.rankX]
            for b in range(d.rankX):
                xpart[b] += pairs[k] * xi[b]
    return Weight(xpart + pairs)


# -- builtins and JSON loading ---------------------------------------------

_BUILTIN_CARTANS = {
    "a1": (["1"], [[2]]),
    "a2": (["1", "2"], [[2, -1], [-1, 2]]),
    "rank2-affine": (["1", "2"], [[2, -2], [-2, 2]]),
}


def builtin_datum(name):
    if name in _BUILTIN_CARTANS:
        gens, form = _BUILTIN_CARTANS[name]
        return simply_connected_datum(CartanDatum(gens, form))
    if name.endswith("-thick"):
        return thicken(builtin_datum(name[:-len("-thick")]))
    raise DatumError("unknown builtin datum %r" % (name,))


BUILTIN_NAMES = ("a1", "a2", "a1-thick", "a2-thick", "rank2-affine")


def datum_from_dict(data):
    for key in ("generators", "cartan", "rankY", "rankX", "pairing",
                "embedY", "embedX"):
        if key not in data:
            raise DatumError("datum file missing key %r" % (key,))
    gens = [str(g) for g in data["generators"]]
    cartan = CartanDatum(gens, data["cartan"])
    embedY = {str(k): v for k, v in data["embedY"].items()}
    embedX = {str(k): v for k, v in data["embedX"].items()}
    for i in gens:
        if i not in embedY:
            raise DatumError("embedY missing generator %r" % (i,))
        if i not in embedX:
            raise DatumError("embedX missing generator %r" % (i,))
    return RootDatum(cartan, data["rankY"], data["rankX"], data["pairing"],
                     embedY, embedX)


def load_datum(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise DatumError("datum file is not valid JSON: %s" % e)
    return datum_from_dict(data)
