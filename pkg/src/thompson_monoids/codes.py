"""Finite prefix codes over a k-letter alphabet and their right ideals.

A prefix code P generates the right ideal P A* of the free monoid; the
code is maximal exactly when every internal vertex of its prefix tree
has all k children, equivalently when the ideal is essential (meets
every other right ideal).  This module provides the tree-side
combinatorics everything else builds on: classification, saturation to
maximal codes, size equalization, right-ideal intersection, and the
essentiality tests.
"""

from enum import Enum

from .words import check_alphabet, check_word, letter, word_str


class CodeKind(Enum):
    NOT_A_CODE = "NotACode"
    CODE = "Code"
    MAXIMAL_CODE = "MaximalCode"


class NotASubidealError(ValueError):
    """Raised when an alleged sub-ideal is not contained in the ambient ideal."""


def _prefix_violation(sorted_words):
    """Return an offending (prefix, extension) pair, or None.

    In lexicographic order any prefix of a word sorts directly before
    the block of its extensions, so checking adjacent pairs suffices.
    """
    for u, v in zip(sorted_words, sorted_words[1:]):
        if v.startswith(u):
            return (u, v)
    return None


def code_kind(words, k):
    """Classify a finite set of words: NotACode, Code, or MaximalCode.

    The empty set counts as a (non-maximal) code; {""} is maximal.
    """
    check_alphabet(k)
    ws = sorted({check_word(w, k) for w in words})
    if _prefix_violation(ws) is not None:
        return CodeKind.NOT_A_CODE
    if not ws:
        return CodeKind.CODE
    vertices = set()
    for w in ws:
        for i in range(len(w) + 1):
            vertices.add(w[:i])
    leaves = set(ws)
    for v in vertices:
        if v in leaves:
            continue
        if any(v + letter(a) not in vertices for a in range(k)):
            return CodeKind.CODE
    return CodeKind.MAXIMAL_CODE


class PrefixCode:
    """An immutable finite prefix code; words kept sorted in dictionary order."""

    __slots__ = ("k", "words")

    def __init__(self, words, k):
        check_alphabet(k)
        ws = tuple(sorted({check_word(w, k) for w in words}))
        bad = _prefix_violation(ws)
        if bad is not None:
            raise ValueError(
                f"not a prefix code: {word_str(bad[0])!r} is a prefix of {word_str(bad[1])!r}"
            )
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "words", ws)

    @classmethod
    def _trusted(cls, sorted_words, k):
        """Internal constructor skipping validation (words already known good)."""
        self = object.__new__(cls)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "words", tuple(sorted_words))
        return self

    def __setattr__(self, name, value):
        raise AttributeError("PrefixCode is immutable")

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return w in self.words

    def __eq__(self, other):
        return (
            isinstance(other, PrefixCode)
            and self.k == other.k
            and self.words == other.words
        )

    def __hash__(self):
        return hash((self.k, self.words))

    def __repr__(self):
        return f"PrefixCode({{{', '.join(map(word_str, self.words))}}}, k={self.k})"

    def __str__(self):
        return "{" + ",".join(word_str(w) for w in self.words) + "}"

    @property
    def kind(self):
        return code_kind(self.words, self.k)

    def is_maximal(self):
        return self.kind is CodeKind.MAXIMAL_CODE

    def max_length(self):
        """Length of the longest word (0 for the empty code)."""
        return max((len(w) for w in self.words), default=0)

    def generates(self, w):
        """Membership of w in the right ideal P A*."""
        return any(w.startswith(p) for p in self.words)


def _internal_vertices(words):
    vertices = set()
    for w in words:
        for i in range(len(w)):
            vertices.add(w[:i])
    return vertices


def saturate(code: PrefixCode, protect=None) -> PrefixCode:
    """Smallest maximal prefix code containing `code`.

    Adds the missing children at every unsaturated internal vertex of
    the prefix tree.  `protect` must be a subset of the code; it is
    trivially preserved since saturation never removes words.  The
    empty code saturates to {""}.
    """
    k = code.k
    if protect is not None:
        extra = set(protect) - set(code.words)
        if extra:
            raise ValueError(f"protected words not in the code: {sorted(extra)}")
    if not code.words:
        return PrefixCode._trusted(("",), k)
    present = set(code.words)
    vertices = _internal_vertices(code.words) | present
    out = set(code.words)
    for v in _internal_vertices(code.words):
        for a in range(k):
            child = v + letter(a)
            if child not in vertices:
                out.add(child)
    return PrefixCode._trusted(sorted(out), k)


def _grow_once(words, k, protect):
    """Replace the dictionary-least non-protected leaf by its k children."""
    for w in words:
        if w not in protect:
            rest = [x for x in words if x != w]
            rest.extend(w + letter(a) for a in range(k))
            return sorted(rest)
    raise ValueError("no growable leaf outside the protected set")


def equalize_sizes(p1: PrefixCode, p2: PrefixCode):
    """Extend two non-maximal codes to maximal codes of equal cardinality.

    Growth always happens at the dictionary-least leaf not belonging to
    the protected original code, so the output is deterministic.
    """
    if p1.k != p2.k:
        raise ValueError("prefix codes over different alphabets")
    k = p1.k
    for p in (p1, p2):
        if p.is_maximal():
            raise ValueError(f"input code {p} is already maximal")
    w1 = list(saturate(p1).words)
    w2 = list(saturate(p2).words)
    protect1, protect2 = set(p1.words), set(p2.words)
    while len(w1) < len(w2):
        w1 = _grow_once(w1, k, protect1)
    while len(w2) < len(w1):
        w2 = _grow_once(w2, k, protect2)
    return PrefixCode._trusted(w1, k), PrefixCode._trusted(w2, k)


def ideal_intersection(p1: PrefixCode, p2: PrefixCode) -> PrefixCode:
    """The prefix code Pi with Pi A* = P1 A* intersect P2 A*.

    Pi is contained in P1 union P2: collect the elements of each code
    lying in the other's ideal, then keep the prefix-minimal ones.
    """
    if p1.k != p2.k:
        raise ValueError("prefix codes over different alphabets")
    candidates = {w for w in p1.words if p2.generates(w)}
    candidates |= {w for w in p2.words if p1.generates(w)}
    ordered = sorted(candidates)
    minimal = []
    for w in ordered:
        if not (minimal and w.startswith(minimal[-1])):
            minimal.append(w)
    return PrefixCode._trusted(minimal, p1.k)


def is_essential_in(sub: PrefixCode, sup: PrefixCode) -> bool:
    """Is the right ideal of `sub` essential in the right ideal of `sup`?

    Requires sub A* to be contained in sup A* (NotASubidealError
    otherwise).  Essential means every infinite path starting in sup A*
    eventually enters sub A*: each p in sup must either lie in sub A*,
    or the residual code of sub under p must be maximal.
    """
    if sub.k != sup.k:
        raise ValueError("prefix codes over different alphabets")
    k = sub.k
    for s in sub.words:
        if not sup.generates(s):
            raise NotASubidealError(
                f"{word_str(s)!r} of the sub-code is not in the ambient ideal {sup}"
            )
    for p in sup.words:
        if any(p.startswith(s) for s in sub.words):
            continue
        residual = {s[len(p):] for s in sub.words if s.startswith(p)}
        if code_kind(residual, k) is not CodeKind.MAXIMAL_CODE:
            return False
    return True


def essentially_equal(p1: PrefixCode, p2: PrefixCode) -> bool:
    """Do the two right ideals have the same ends?

    True iff their intersection ideal is essential in both.
    """
    shared = ideal_intersection(p1, p2)
    return is_essential_in(shared, p1) and is_essential_in(shared, p2)


def make_q_code(i: int, j: int, k: int) -> PrefixCode:
    """The comb-shaped prefix code of cardinality i + (k-1)j.

    For j = 0 this is the first i letters; for j >= 1 it is
    {a_2..a_i} together with the off-spine children a_1^r (A - {a_1})
    for 0 < r < j and the full sibling set a_1^j A.  Maximal iff i = k.
    """
    check_alphabet(k)
    if not (1 <= i <= k) or j < 0:
        raise ValueError(f"require 1 <= i <= k and j >= 0, got i={i}, j={j}")
    if j == 0:
        return PrefixCode([letter(a) for a in range(i)], k)
    spine = letter(0)
    words = [letter(a) for a in range(1, i)]
    for r in range(1, j):
        words.extend(spine * r + letter(a) for a in range(1, k))
    words.extend(spine * j + letter(a) for a in range(k))
    return PrefixCode(words, k)
