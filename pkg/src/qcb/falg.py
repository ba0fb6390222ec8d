"""The algebra f, realized per weight as free words modulo the radical of
the inner product.

Everything is driven by the normalized pairing <x,y>' =
(1-v^-2)^{tr nu} (x,y), which on exponent-1 words is a Laurent
polynomial with an integer recursion: peeling the first letter i of the
left word sums over matching letters of the right word with twist
v^{i.|prefix|}.  Each weight space enumerates its words once, picks a
deterministic pivot subset with nonsingular Gram, stores coordinates for
every word, and certifies that the rejected words all lie in the
radical.
"""

from functools import lru_cache
import itertools

from .coeff import (
    LaurentPoly, RationalFn, ZERO, ONE, R_ZERO, R_ONE, vinv,
    quantum_factorial,
)

_ONE_MINUS_VINV2 = ONE - vinv * vinv


class FAlgError(ValueError):
    pass


class DividedWord:
    """theta_{i1}^{(a1)} ... theta_{in}^{(an)} as ((label, exp), ...)."""

    __slots__ = ("letters",)

    def __init__(self, letters):
        letters = tuple((i, int(a)) for i, a in letters)
        if any(a <= 0 for _, a in letters):
            raise FAlgError("divided word exponents must be positive")
        self.letters = letters

    def expanded(self):
        """The exponent-1 label word."""
        out = []
        for i, a in self.letters:
            out.extend([i] * a)
        return tuple(out)

    def weight(self, cartan):
        nu = [0] * cartan.rank
        for i, a in self.letters:
            nu[cartan.index(i)] += a
        return tuple(nu)

    def tr(self):
        return sum(a for _, a in self.letters)

    def factorial(self):
        """Product of [a_k]! over the letters."""
        f = ONE
        for _, a in self.letters:
            f = f * quantum_factorial(a)
        return f

    def __eq__(self, other):
        return isinstance(other, DividedWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        if not self.letters:
            return "DividedWord(1)"
        return "DividedWord(%s)" % " ".join(
            "th_%s" % i if a == 1 else "th_%s^(%d)" % (i, a)
            for i, a in self.letters)


class FVector:
    """A homogeneous element of f in pivot coordinates of its weight."""

    __slots__ = ("alg", "nu", "coords")

    def __init__(self, alg, nu, coords):
        self.alg = alg
        self.nu = tuple(nu)
        self.coords = tuple(coords)

    def is_zero(self):
        return not any(self.coords)

    def __add__(self, other):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.nu != other.nu:
            raise FAlgError("adding vectors of different weights")
        return FVector(self.alg, self.nu,
                       [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if not isinstance(c, RationalFn):
            c = RationalFn(c)
        return FVector(self.alg, self.nu, [c * a for a in self.coords])

    def __mul__(self, other):
        return self.alg.multiply(self, other)

    def bar(self):
        return FVector(self.alg, self.nu, [c.bar() for c in self.coords])

    def support(self):
        """(pivot index, coefficient) pairs with nonzero coefficient."""
        return [(k, c) for k, c in enumerate(self.coords) if c]

    def __eq__(self, other):
        if not isinstance(other, FVector):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.nu == other.nu and self.coords == other.coords

    def __hash__(self):
        if self.is_zero():
            return hash(())
        return hash((self.nu, self.coords))

    def __repr__(self):
        if self.is_zero():
            return "FVector(0)"
        ws = self.alg.weight_space(self.nu)
        bits = []
        for k, c in self.support():
            word = ws.pivots[k]
            name = "*".join("th_%s" % self.alg.cartan.gens[t] for t in word) \
                or "1"
            bits.append("(%s)%s" % (c, name))
        return "FVector(%s)" % " + ".join(bits)


class WeightSpaceBasis:
    """All exponent-1 words of one weight with pivot coordinates."""

    def __init__(self, alg, nu):
        self.alg = alg
        self.nu = tuple(nu)
        letters = []
        for k, m in enumerate(self.nu):
            letters.extend([k] * m)
        words = sorted(set(itertools.permutations(letters)))
        self.words = words
        # fraction-free greedy: maintain det and adjugate of the pivot
        # Gram in Laurent arithmetic; the Schur numerator s_num =
        # gamma*det - g^T adj g decides acceptance (s = s_num/det)
        pivots = []
        gram = []
        det = ONE
        adj = []
        rejected = []
        for w in words:
            g = [alg.npair(p, w) for p in pivots]
            gamma = alg.npair(w, w)
            k = len(pivots)
            u = [sum((adj[a][b] * g[b] for b in range(k) if g[b]), ZERO)
                 for a in range(k)]
            snum = gamma * det - sum((g[a] * u[a] for a in range(k)
                                      if g[a] and u[a]), ZERO)
            if snum:
                new_adj = []
                for a in range(k):
                    row = []
                    for b in range(k):
                        q = (snum * adj[a][b] + u[a] * u[b]).exact_div(det)
                        if q is None:
                            raise AssertionError(
                                "adjugate update not integral at %r"
                                % (self.nu,))
                        row.append(q)
                    row.append(-u[a])
                    new_adj.append(row)
                new_adj.append([-u[b] for b in range(k)] + [det])
                adj = new_adj
                det = snum
                for row, entry in zip(gram, g):
                    row.append(entry)
                gram.append(g + [gamma])
                pivots.append(w)
            else:
                rejected.append(w)
        dim = len(pivots)
        coords = {}
        numvecs = {}
        for k, p in enumerate(pivots):
            coords[p] = tuple(R_ONE if a == k else R_ZERO for a in range(dim))
        # coordinates of every rejected word over the final pivot set:
        # t = adj*g / det
        for w in rejected:
            g = [alg.npair(p, w) for p in pivots]
            u = [sum((adj[a][b] * g[b] for b in range(dim) if g[b]), ZERO)
                 for a in range(dim)]
            coords[w] = tuple(RationalFn(x, det) for x in u)
            numvecs[w] = (g, u)
        # certify spanning: each rejected residual is orthogonal to all
        # pivots by construction; mutual pairings must vanish too, which
        # puts the residuals in the radical
        for a in range(len(rejected)):
            wa = rejected[a]
            ga = numvecs[wa][0]
            for b in range(a, len(rejected)):
                wb = rejected[b]
                ub = numvecs[wb][1]
                val = det * alg.npair(wa, wb)
                for c in range(dim):
                    if ub[c] and ga[c]:
                        val = val - ub[c] * ga[c]
                if val:
                    raise AssertionError(
                        "pivot selection failed to span f_%r mod radical"
                        % (self.nu,))
        self.pivots = pivots
        self.dim = dim
        self.gram = gram
        self.gram_det = det
        self.gram_adj = adj
        self._gram_inv = None
        self._coords = coords
        self._pivot_index = {p: k for k, p in enumerate(pivots)}

    @property
    def gram_inv(self):
        if self._gram_inv is None:
            d = RationalFn(self.gram_det)
            self._gram_inv = [[RationalFn(x) / d for x in row]
                              for row in self.gram_adj]
        return self._gram_inv

    def coords_of_word(self, w):
        try:
            return self._coords[w]
        except KeyError:
            raise FAlgError("word %r does not have weight %r" % (w, self.nu))

    def pivot_divided_words(self):
        gens = self.alg.cartan.gens
        return [DividedWord([(gens[t], 1) for t in w]) for w in self.pivots]


class FAlg:
    """Shared context: one instance per Cartan datum and degree bound."""

    def __init__(self, cartan, degree_bound=14):
        self.cartan = cartan
        self.degree_bound = degree_bound
        self._npair_memo = {}
        self._spaces = {}
        self._lmult = {}
        self._ir_word = {}

    # -- weights -----------------------------------------------------------

    def zero_nu(self):
        return (0,) * self.cartan.rank

    def nu_of_labels(self, labels):
        nu = [0] * self.cartan.rank
        for i in labels:
            nu[self.cartan.index(i)] += 1
        return tuple(nu)

    def nu_add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def nu_sub(self, a, b):
        out = tuple(x - y for x, y in zip(a, b))
        if any(x < 0 for x in out):
            return None
        return out

    def nu_dot(self, i, nu):
        """i . nu for a generator label and an N[I] weight."""
        ix = self.cartan.index(i)
        return sum(m * self.cartan.form[ix][k] for k, m in enumerate(nu))

    def form_dot(self, nu1, nu2):
        """nu1 . nu2, both N[I] weights."""
        s = 0
        for a, x in enumerate(nu1):
            if x:
                row = self.cartan.form[a]
                for b, y in enumerate(nu2):
                    if y:
                        s += x * row[b] * y
        return s

    # -- the normalized pairing --------------------------------------------

    def npair(self, w1, w2):
        """<w1, w2>' on exponent-1 index words; Laurent-valued."""
        if len(w1) != len(w2):
            return ZERO
        if not w1:
            return ONE
        key = (w1, w2) if w1 <= w2 else (w2, w1)
        hit = self._npair_memo.get(key)
        if hit is not None:
            return hit
        a, b = key
        i = a[0]
        rest = a[1:]
        form_i = self.cartan.form[i]
        total = ZERO
        s = 0
        for k, letter in enumerate(b):
            if letter == i:
                sub = self.npair(rest, b[:k] + b[k + 1:])
                if sub:
                    total = total + sub.shift(s)
            s += form_i[letter]
        self._npair_memo[key] = total
        return total

    # -- weight spaces and vectors -----------------------------------------

    def weight_space(self, nu):
        nu = tuple(nu)
        ws = self._spaces.get(nu)
        if ws is None:
            if sum(nu) > self.degree_bound:
                raise FAlgError(
                    "weight %r exceeds degree bound %d" % (nu, self.degree_bound))
            if any(m < 0 for m in nu):
                raise FAlgError("negative weight %r" % (nu,))
            ws = WeightSpaceBasis(self, nu)
            self._spaces[nu] = ws
        return ws

    def dim(self, nu):
        return self.weight_space(nu).dim

    def zero(self, nu):
        return FVector(self, nu, (R_ZERO,) * self.weight_space(nu).dim)

    def one(self):
        return FVector(self, self.zero_nu(), (R_ONE,))

    def theta(self, i):
        return self.word_vector([i])

    def word_vector(self, labels):
        """The product theta_{i1}...theta_{in} as an FVector."""
        word = tuple(self.cartan.index(i) for i in labels)
        nu = self.nu_of_labels(labels)
        return FVector(self, nu, self.weight_space(nu).coords_of_word(word))

    def pivot_vector(self, nu, k):
        ws = self.weight_space(nu)
        return FVector(self, nu,
                       tuple(R_ONE if a == k else R_ZERO
                             for a in range(ws.dim)))

    def divided(self, i, n):
        """theta_i^{(n)}."""
        if n == 0:
            return self.one()
        x = self.word_vector([i] * n)
        return x.scale(RationalFn(ONE, quantum_factorial(n)))

    def divided_word_vector(self, dw):
        """A DividedWord as an FVector."""
        x = self.word_vector(dw.expanded())
        return x.scale(RationalFn(ONE, dw.factorial()))

    # -- operations --------------------------------------------------------

    def multiply(self, x, y):
        nu = self.nu_add(x.nu, y.nu)
        if sum(nu) > self.degree_bound:
            raise FAlgError("product weight %r exceeds degree bound" % (nu,))
        ws = self.weight_space(nu)
        xs = self.weight_space(x.nu)
        ys = self.weight_space(y.nu)
        out = [R_ZERO] * ws.dim
        for a, ca in x.support():
            wa = xs.pivots[a]
            for b, cb in y.support():
                c = ca * cb
                t = ws.coords_of_word(wa + ys.pivots[b])
                for k in range(ws.dim):
                    if t[k]:
                        out[k] = out[k] + c * t[k]
        return FVector(self, nu, out)

    def _ir_coords(self, ix, word, left):
        """Coordinates of _i r(word) (left=True) or r_i(word) in f_{nu-i}."""
        key = (ix, word, left)
        hit = self._ir_word.get(key)
        if hit is not None:
            return hit
        nu = [0] * self.cartan.rank
        for t in word:
            nu[t] += 1
        nu[ix] -= 1
        ws = self.weight_space(tuple(nu))
        out = [R_ZERO] * ws.dim
        form_i = self.cartan.form[ix]
        rng = range(len(word)) if left else range(len(word) - 1, -1, -1)
        s = 0
        for k in rng:
            if word[k] == ix:
                t = ws.coords_of_word(word[:k] + word[k + 1:])
                for c in range(ws.dim):
                    if t[c]:
                        out[c] = out[c] + RationalFn(LaurentPoly({s: 1})) * t[c]
            s += form_i[word[k]]
        out = tuple(out)
        self._ir_word[key] = out
        return out

    def _r_deriv(self, i, x, left):
        ix = self.cartan.index(i)
        if x.nu[ix] == 0:
            return FVector(self, x.nu, (R_ZERO,) * len(x.coords))
        nu = tuple(m - (1 if k == ix else 0) for k, m in enumerate(x.nu))
        ws = self.weight_space(nu)
        xs = self.weight_space(x.nu)
        out = [R_ZERO] * ws.dim
        for a, ca in x.support():
            t = self._ir_coords(ix, xs.pivots[a], left)
            for c in range(ws.dim):
                if t[c]:
                    out[c] = out[c] + ca * t[c]
        return FVector(self, nu, out)

    def i_r(self, i, x):
        """_i r(x): left derivation with _i r(theta_j) = delta_ij."""
        return self._r_deriv(i, x, True)

    def r_i(self, i, x):
        """r_i(x): right derivation with r_i(theta_j) = delta_ij."""
        return self._r_deriv(i, x, False)

    def gram_form(self, x, y):
        """Lusztig's inner product (x, y)_f."""
        if x.nu != y.nu:
            return R_ZERO
        ws = self.weight_space(x.nu)
        num = R_ZERO
        for a, ca in x.support():
            for b, cb in y.support():
                g = ws.gram[a][b]
                if g:
                    num = num + ca * cb * RationalFn(g)
        if not num:
            return R_ZERO
        return num / RationalFn(_ONE_MINUS_VINV2 ** sum(x.nu))

    def npair_vectors(self, x, y):
        """The normalized pairing <x,y>' on FVectors (RationalFn)."""
        if x.nu != y.nu:
            return R_ZERO
        ws = self.weight_space(x.nu)
        out = R_ZERO
        for a, ca in x.support():
            for b, cb in y.support():
                g = ws.gram[a][b]
                if g:
                    out = out + ca * cb * RationalFn(g)
        return out

    def comultiply_struct(self, x):
        """r(x) grouped by weight split.

        Returns {(nuL, nuR): {(a, b): coeff}} over pivot index pairs.
        """
        out = {}
        xs = self.weight_space(x.nu)
        n = sum(x.nu)
        for idx, cx in x.support():
            w = xs.pivots[idx]
            for mask in range(1 << n):
                left = []
                right = []
                e = 0
                for pos in range(n):
                    if mask >> pos & 1:
                        left.append(w[pos])
                    else:
                        right.append(w[pos])
                # E(S) = sum over a<b with a right, b left of w_a . w_b
                for bpos in range(n):
                    if mask >> bpos & 1:
                        fb = self.cartan.form[w[bpos]]
                        for apos in range(bpos):
                            if not (mask >> apos & 1):
                                e += fb[w[apos]]
                lw, rw = tuple(left), tuple(right)
                nuL = [0] * self.cartan.rank
                for t in lw:
                    nuL[t] += 1
                nuL = tuple(nuL)
                nuR = self.nu_sub(x.nu, nuL)
                coeff = cx * RationalFn(LaurentPoly({e: 1}))
                tl = self.weight_space(nuL).coords_of_word(lw)
                tr_ = self.weight_space(nuR).coords_of_word(rw)
                buck = out.setdefault((nuL, nuR), {})
                for a, va in enumerate(tl):
                    if not va:
                        continue
                    for b, vb in enumerate(tr_):
                        if not vb:
                            continue
                        key = (a, b)
                        acc = buck.get(key, R_ZERO) + coeff * va * vb
                        if acc:
                            buck[key] = acc
                        else:
                            buck.pop(key, None)
        return {k: v for k, v in out.items() if v}

    def comultiply(self, x):
        """r(x) as (left pivot FVector, right pivot FVector, coeff) triples."""
        struct = self.comultiply_struct(x)
        triples = []
        for (nuL, nuR) in sorted(struct):
            buck = struct[(nuL, nuR)]
            for (a, b) in sorted(buck):
                triples.append((self.pivot_vector(nuL, a),
                                self.pivot_vector(nuR, b), buck[(a, b)]))
        return triples

    def sigma(self, x):
        """The anti-automorphism fixing the generators (word reversal)."""
        ws = self.weight_space(x.nu)
        out = [R_ZERO] * ws.dim
        for a, ca in x.support():
            t = ws.coords_of_word(ws.pivots[a][::-1])
            for c in range(ws.dim):
                if t[c]:
                    out[c] = out[c] + ca * t[c]
        return FVector(self, x.nu, out)

    def dual_basis(self, nu, cb):
        """Vectors dual to cb under the inner product: (b_k, d_l) = delta."""
        from ._linalg import mat_inverse
        n = len(cb)
        gram = [[self.gram_form(cb[a], cb[b]) for b in range(n)]
                for a in range(n)]
        inv = mat_inverse(gram, R_ZERO, R_ONE)
        if inv is None:
            raise FAlgError("singular canonical-basis Gram at %r" % (nu,))
        out = []
        for l in range(n):
            acc = self.zero(nu)
            for k in range(n):
                if inv[k][l]:
                    acc = acc + cb[k].scale(inv[k][l])
            out.append(acc)
        return out

    def left_mult_matrix(self, i, target_nu):
        """Matrix of x -> theta_i x : f_{nu-i} -> f_nu in pivot coords."""
        ix = self.cartan.index(i)
        key = (ix, tuple(target_nu))
        hit = self._lmult.get(key)
        if hit is not None:
            return hit
        src = self.nu_sub(tuple(target_nu), self.nu_of_labels([i]))
        tgt = self.weight_space(target_nu)
        cols = [tgt.coords_of_word((ix,) + p)
                for p in self.weight_space(src).pivots]
        mat = [[cols[b][a] for b in range(len(cols))]
               for a in range(tgt.dim)]
        self._lmult[key] = mat
        return mat


@lru_cache(maxsize=None)
def falg_for(cartan, degree_bound=14):
    """Shared per-datum algebra context."""
    return FAlg(cartan, degree_bound)
