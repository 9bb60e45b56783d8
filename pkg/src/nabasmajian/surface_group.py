"""Free-group words for surface groups, boundary words, and canonical
representatives of double cosets ``<alpha_j> w <alpha_q>``.

A word is a tuple of letter codes: generator ``i`` is ``2*i`` and its
inverse is ``2*i + 1``, so the inverse of a code ``x`` is ``x ^ 1`` and the
alphabet order ``g1 < g1^-1 < g2 < g2^-1 < ...`` is plain integer order.
Text form uses ``a, b, c, ...`` for generators and upper case for inverses;
the empty word prints as ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from string import ascii_lowercase

from .errors import BadLetter, BadSurface, IdentityCoset

Word = tuple


def letter_name(code):
    ch = ascii_lowercase[code >> 1]
    return ch.upper() if code & 1 else ch


def format_word(w):
    return "".join(letter_name(x) for x in w) or "1"


def parse_word(text, rank=None):
    """Parse ``abAB`` style text (``1`` or empty for the identity); the
    result is freely reduced."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for ch in text:
        if not ch.isascii() or not ch.isalpha():
            raise BadLetter(f"unknown letter {ch!r} in {text!r}")
        code = 2 * ascii_lowercase.index(ch.lower()) + (1 if ch.isupper() else 0)
        if rank is not None and code >> 1 >= rank:
            raise BadLetter(f"letter {ch!r} outside the {rank} generators")
        out.append(code)
    return reduce_word(out)


def _check(letters, rank):
    for x in letters:
        if not isinstance(x, int) or x < 0 or (rank is not None and x >> 1 >= rank):
            raise BadLetter(f"unknown letter code {x!r}")


def reduce_word(letters, rank=None):
    _check(letters, rank)
    out = []
    for x in letters:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def multiply(*words):
    return reduce_word([x for w in words for x in w])


def invert(w):
    return tuple(x ^ 1 for x in reversed(w))


def power(w, n):
    if n < 0:
        w, n = invert(w), -n
    return reduce_word(w * n)


def is_cyclically_reduced(w):
    return len(w) < 2 or w[0] != w[-1] ^ 1


def reduced_words(rank, length):
    """All reduced words of exactly ``length`` letters, in lexicographic order."""
    if length == 0:
        yield ()
        return
    for w in reduced_words(rank, length - 1):
        for x in range(2 * rank):
            if not w or x != w[-1] ^ 1:
                yield w + (x,)


@dataclass(frozen=True)
class SurfaceType:
    genus: int
    boundaries: int

    def __post_init__(self):
        if self.genus < 0 or self.boundaries < 1:
            raise BadSurface("need genus >= 0 and at least one boundary component")
        if self.euler_characteristic >= 0:
            raise BadSurface(f"surface ({self.genus}, {self.boundaries}) has "
                             f"Euler characteristic {self.euler_characteristic} >= 0")

    @property
    def euler_characteristic(self):
        return 2 - 2 * self.genus - self.boundaries

    @property
    def rank(self):
        return 2 * self.genus + self.boundaries - 1


@dataclass(frozen=True)
class BoundarySystem:
    surface: SurfaceType
    words: tuple

    def __post_init__(self):
        for j, w in enumerate(self.words, 1):
            if not w:
                raise BadSurface(f"boundary {j} is the trivial word")
            if not is_cyclically_reduced(w) or reduce_word(w) != w:
                raise BadSurface(f"boundary {j} ({format_word(w)}) is not cyclically reduced")
            _check(w, self.surface.rank)
        if len(self.words) != self.surface.boundaries:
            raise BadSurface(f"expected {self.surface.boundaries} boundary words")

    def __getitem__(self, j):
        """1-based access, matching boundary labels."""
        return self.words[j - 1]

    def __len__(self):
        return len(self.words)


def boundary_words(surface):
    """Standard boundary words for generators a1, b1, ..., ag, bg, c1, ..., c(m-1).

    alpha_j = c_j for j < m and alpha_m = (c1...c(m-1))^-1 [ag,bg]...[a1,b1],
    which comes from the relation [b1,a1]...[bg,ag] c1 ... cm = 1.  For the
    one-holed torus this is the commutator ``abAB``.
    """
    g, m = surface.genus, surface.boundaries
    a = [4 * i for i in range(g)]
    b = [4 * i + 2 for i in range(g)]
    c = [2 * (2 * g + k) for k in range(m - 1)]
    comms = []
    for i in reversed(range(g)):
        comms += [a[i], b[i], a[i] ^ 1, b[i] ^ 1]
    last = reduce_word(list(invert(tuple(c))) + comms)
    # cyclic reduction never triggers for these words, but keep it honest
    while not is_cyclically_reduced(last):
        last = last[1:-1]
    return BoundarySystem(surface, tuple((x,) for x in c) + (last,))


CANONICAL = 0
NOT_CANONICAL = 1
LEFT_IMPROVABLE = 2
RIGHT_IMPROVABLE = 3


@dataclass(frozen=True, order=True)
class DoubleCosetRep:
    j: int
    q: int
    word: tuple

    def __str__(self):
        return f"({self.j},{self.q}) {format_word(self.word)}"


class DoubleCosets:
    """Double cosets ``<alpha_j> \\ F / <alpha_q>`` for cyclically reduced
    ``alpha_j`` and ``alpha_q``.

    The canonical representative of a coset is its shortest element, ties
    broken by the lexicographically largest word.  ``is_canonical`` decides
    this locally from how far ``w`` overlaps powers of the boundary words at
    each end; ``canonical_rep`` and ``coset_equal`` are bounded brute-force
    searches kept as an independent check.
    """

    def __init__(self, alpha_j, alpha_q, same=None):
        for a in (alpha_j, alpha_q):
            if not a or not is_cyclically_reduced(a) or reduce_word(a) != a:
                raise ValueError(f"{format_word(a)} must be nontrivial and cyclically reduced")
        self.aj = tuple(alpha_j)
        self.aq = tuple(alpha_q)
        self.aj_inv = invert(self.aj)
        self.aq_inv = invert(self.aq)
        self.same = (self.aj == self.aq) if same is None else same

    # -- brute force -----------------------------------------------------

    def _shift(self, w, n, s):
        return multiply(power(self.aj, n), w, power(self.aq, s))

    def canonical_rep(self, w):
        w = reduce_word(w)
        bound = len(w) // min(len(self.aj), len(self.aq)) + 2
        cands = {self._shift(w, n, s) for n in range(-bound, bound + 1)
                 for s in range(-bound, bound + 1)}
        shortest = min(len(v) for v in cands)
        return max(v for v in cands if len(v) == shortest)

    def coset_equal(self, w1, w2):
        w1, w2 = reduce_word(w1), reduce_word(w2)
        bound = (len(w1) + len(w2)) // min(len(self.aj), len(self.aq)) + 2
        return any(self._shift(w1, n, s) == w2 for n in range(-bound, bound + 1)
                   for s in range(-bound, bound + 1))

    def is_identity_coset(self, w):
        """True when j = q and w lies in <alpha_j> <alpha_q>."""
        if not self.same:
            return False
        return self.canonical_rep(w) == ()

    # -- local test ------------------------------------------------------

    def _overlaps(self, w):
        """Overlaps of w's ends with powers of the boundary words, capped just
        above half a boundary word (larger values only matter as "too big")."""
        cj, cq = len(self.aj) // 2 + 1, len(self.aq) // 2 + 1
        return (_prefix_overlap(w, self.aj, cj), _prefix_overlap(w, self.aj_inv, cj),
                _suffix_overlap(w, self.aq, cq), _suffix_overlap(w, self.aq_inv, cq))

    def left_improvable(self, w):
        """Multiplying on the left by alpha_j^{+-1} shortens w.  Every right
        extension of such a word is then non-canonical too."""
        lj, c = len(self.aj), len(self.aj) // 2 + 1
        return 2 * max(_prefix_overlap(w, self.aj, c), _prefix_overlap(w, self.aj_inv, c)) > lj

    def right_improvable(self, w):
        """Mirror of :meth:`left_improvable`; prunes left extensions."""
        lq, c = len(self.aq), len(self.aq) // 2 + 1
        return 2 * max(_suffix_overlap(w, self.aq, c), _suffix_overlap(w, self.aq_inv, c)) > lq

    def is_canonical(self, w):
        return self.verdict(w) == CANONICAL

    def verdict(self, w):
        """CANONICAL, NOT_CANONICAL, or one of LEFT_IMPROVABLE /
        RIGHT_IMPROVABLE when an end of w overlaps a boundary power by more
        than half its length (left is reported first)."""
        mp, mm, rp, rm = self._overlaps(w)
        lj, lq = len(self.aj), len(self.aq)
        left, right = max(mp, mm), max(rp, rm)
        if 2 * left > lj:
            return LEFT_IMPROVABLE
        if 2 * right > lq:
            return RIGHT_IMPROVABLE
        n = len(w)
        if left + right >= n:
            # the cancellations at both ends can interact; decide by search
            return CANONICAL if self.canonical_rep(w) == w else NOT_CANONICAL
        if 2 * left < lj and 2 * right < lq:
            return CANONICAL
        # A half-boundary overlap gives other words of the same length:
        # swap the matched half at that end for the other half.
        heads = [()]
        if 2 * mp == lj:
            heads.append(self.aj_inv[:lj - mp])
        if 2 * mm == lj:
            heads.append(self.aj[:lj - mm])
        tails = [()]
        if 2 * rp == lq:
            tails.append(self.aq[rp:])
        if 2 * rm == lq:
            tails.append(self.aq_inv[rm:])
        for head in heads:
            for tail in tails:
                if not head and not tail:
                    continue
                v = head + w[len(head):n - len(tail)] + tail
                if v > w:
                    return NOT_CANONICAL
        return CANONICAL


def _prefix_overlap(w, alpha, cap):
    """Common prefix length of w and alpha alpha ..., at most ``cap``."""
    n = len(alpha)
    k = 0
    for x in w:
        if k == cap or x != alpha[k % n]:
            break
        k += 1
    return k


def _suffix_overlap(w, alpha, cap):
    """Common prefix length of w^-1 and alpha alpha ..., at most ``cap``."""
    n = len(alpha)
    k = 0
    for x in reversed(w):
        if k == cap or x ^ 1 != alpha[k % n]:
            break
        k += 1
    return k


def enumerate_double_cosets(system, j, q, max_len):
    """Canonical representatives of all double cosets of length <= max_len,
    ordered by length and then lexicographically.  The identity coset is
    left out when j = q."""
    cosets = DoubleCosets(system[j], system[q], same=(j == q))
    rank = system.surface.rank
    found = []
    if max_len < 0:
        return found
    stack = [()]
    while stack:
        w = stack.pop()
        verdict = cosets.verdict(w)
        if verdict == LEFT_IMPROVABLE:
            continue
        if verdict == CANONICAL and not (w == () and j == q):
            found.append(DoubleCosetRep(j, q, w))
        if len(w) < max_len:
            for x in range(2 * rank):
                if not w or x != w[-1] ^ 1:
                    stack.append(w + (x,))
    found.sort(key=lambda r: (len(r.word), r.word))
    return found


def check_not_identity(system, j, q, w):
    if j == q and DoubleCosets(system[j], system[q], same=True).is_identity_coset(w):
        raise IdentityCoset(f"{format_word(w)} lies in the identity coset of boundary {j}")
