"""Right-ideal morphisms given by finite tables, and the monoid product.

An element is a finite table mapping a prefix code (the domain code)
into A*; it induces the partial map phi(x w) = phi(x) w on the right
ideal generated by the domain code.  Two tables represent the same
monoid element exactly when their maximal essential extensions agree,
so the maximally extended table is the canonical form and the product
is raw composition followed by maximal extension.

The empty table is the zero element; {("", "")} is the identity.
"""

import json
from dataclasses import dataclass

from .codes import CodeKind, PrefixCode, code_kind, ideal_intersection
from .words import check_alphabet, check_word, letter, word_str


class NotInjectiveError(ValueError):
    """Raised when inverting a non-injective element."""


@dataclass(frozen=True)
class MorphismClass:
    """Submonoid membership profile of an element."""

    injective: bool
    total: bool
    surjective: bool

    @property
    def unit(self) -> bool:
        return self.injective and self.total and self.surjective


class Morphism:
    """A right-ideal morphism table over a k-letter alphabet.

    The table is stored sorted by domain word.  The domain must be a
    prefix code; the image side is an arbitrary finite set of words
    (it need not be a prefix code).
    """

    __slots__ = ("k", "table", "_dom_map", "_dom_lengths")

    def __init__(self, entries, k):
        check_alphabet(k)
        pairs = []
        for x, y in entries:
            pairs.append((check_word(x, k), check_word(y, k)))
        pairs.sort()
        dom_map = {}
        for x, y in pairs:
            if x in dom_map and dom_map[x] != y:
                raise ValueError(f"conflicting table entries for domain word {word_str(x)!r}")
            dom_map[x] = y
        dom = sorted(dom_map)
        for u, v in zip(dom, dom[1:]):
            if v.startswith(u):
                raise ValueError(
                    f"domain is not a prefix code: {word_str(u)!r} is a prefix of {word_str(v)!r}"
                )
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "table", tuple((x, dom_map[x]) for x in dom))
        object.__setattr__(self, "_dom_map", dom_map)
        object.__setattr__(self, "_dom_lengths", sorted({len(x) for x in dom}))

    def __setattr__(self, name, value):
        raise AttributeError("Morphism is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, k):
        return cls((), k)

    @classmethod
    def one(cls, k):
        return cls((("", ""),), k)

    @classmethod
    def identity(cls, code: PrefixCode):
        return cls(((w, w) for w in code.words), code.k)

    @classmethod
    def atom(cls, u, v, k):
        """The one-entry table (u -> v)."""
        return cls(((u, v),), k)

    # -- basics -------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Morphism) and self.k == other.k and self.table == other.table

    def __hash__(self):
        return hash((self.k, self.table))

    def __repr__(self):
        return f"Morphism({self!s}, k={self.k})"

    def __str__(self):
        body = ", ".join(f"{word_str(x)}->{word_str(y)}" for x, y in self.table)
        return "{" + body + "}"

    def __len__(self):
        return len(self.table)

    @property
    def table_size(self):
        return len(self.table)

    @property
    def is_zero(self):
        return not self.table

    def domain_code(self) -> PrefixCode:
        return PrefixCode._trusted([x for x, _ in self.table], self.k)

    def value_set(self):
        """phi(domC(phi)) as a set of words."""
        return {y for _, y in self.table}

    def max_word_length(self):
        """Longest word occurring anywhere in the table."""
        return max((max(len(x), len(y)) for x, y in self.table), default=0)

    # -- evaluation ---------------------------------------------------

    def apply(self, w):
        """phi(w), or None when w is outside the domain ideal."""
        for n in self._dom_lengths:
            if n > len(w):
                break
            y = self._dom_map.get(w[:n])
            if y is not None:
                return y + w[n:]
        return None

    # -- canonical form -----------------------------------------------

    def maximal_extension(self) -> "Morphism":
        """Canonical representative: merge sibling blocks until no rule applies.

        A block {(x a_1, y a_1), ..., (x a_k, y a_k)} rewrites to (x, y);
        the system is terminating and confluent, so the result does not
        depend on merge order.
        """
        k = self.k
        table = dict(self.table)
        changed = True
        while changed:
            changed = False
            parents = {}
            for x in table:
                if x:
                    parents.setdefault(x[:-1], []).append(x)
            for parent, kids in parents.items():
                if len(kids) != k:
                    continue
                y0 = table[parent + letter(0)]
                if not y0.endswith(letter(0)):
                    continue
                y = y0[:-1]
                if all(table[parent + letter(a)] == y + letter(a) for a in range(k)):
                    for a in range(k):
                        del table[parent + letter(a)]
                    table[parent] = y
                    changed = True
            # loop again: merges may enable merges one level up
        return Morphism(table.items(), k)

    def equal_in_m(self, other: "Morphism") -> bool:
        """Equality as elements of the monoid (canonical tables agree)."""
        if self.k != other.k:
            raise ValueError("morphisms over different alphabets")
        return self.maximal_extension().table == other.maximal_extension().table

    # -- restriction and composition ----------------------------------

    def restrict_to_ideal(self, code: PrefixCode) -> "Morphism":
        """Restriction of the graph to Dom(phi) intersect (code)A*."""
        if code.k != self.k:
            raise ValueError("prefix code over a different alphabet")
        dom = ideal_intersection(self.domain_code(), code)
        return Morphism(((d, self.apply(d)) for d in dom), self.k)

    def compose(self, inner: "Morphism") -> "Morphism":
        """Raw table of self o inner (no maximal extension).

        For each entry (x, y) of inner and each domain word p of self
        comparable with y: if p = y t the composite has (x t, self(p));
        if y = p s it has (x, self(p) s).
        """
        if self.k != inner.k:
            raise ValueError("morphisms over different alphabets")
        entries = {}
        for x, y in inner.table:
            for p, z in self.table:
                if p.startswith(y):
                    entries[x + p[len(y):]] = z
                elif y.startswith(p):
                    entries[x] = z + y[len(p):]
        return Morphism(entries.items(), self.k)

    def multiply(self, inner: "Morphism") -> "Morphism":
        """Monoid product: composition followed by maximal extension."""
        return self.compose(inner).maximal_extension()

    def __mul__(self, inner):
        if not isinstance(inner, Morphism):
            return NotImplemented
        return self.multiply(inner)

    # -- image structure ----------------------------------------------

    def image_code(self) -> PrefixCode:
        """imC(phi): prefix-minimal elements of phi(domC(phi))."""
        ordered = sorted(self.value_set())
        minimal = []
        for w in ordered:
            if not (minimal and w.startswith(minimal[-1])):
                minimal.append(w)
        return PrefixCode._trusted(minimal, self.k)

    def inverse_image_of_code(self, code: PrefixCode) -> PrefixCode:
        """The prefix code {x : phi(x) in code}.

        Per entry (x, y): each z = y t in the code contributes x t
        (the z = y case covers "x itself when y is in the code"); a z
        that is a proper prefix of y contributes nothing, since y w can
        never fall back onto z.
        """
        if code.k != self.k:
            raise ValueError("prefix code over a different alphabet")
        out = set()
        for x, y in self.table:
            for z in code.words:
                if z.startswith(y):
                    out.add(x + z[len(y):])
        return PrefixCode(out, self.k)

    def is_normal(self) -> bool:
        """Does phi map its domain code onto its image code?

        Equivalently: the value set is itself a prefix code.
        """
        return code_kind(self.value_set(), self.k) is not CodeKind.NOT_A_CODE

    def normalize(self) -> "Morphism":
        """An equal-in-M normal table via saturated prefix trees.

        For each domain word p, the residues W of the saturated tree
        rooted at phi(p) spanning its extensions inside phi(domC) form
        a maximal prefix code; restricting to the union of p W A* gives
        a normal morphism representing the same element.
        """
        if self.is_zero:
            return self
        values = self.value_set()
        entries = []
        for x, y in self.table:
            for w in _saturated_leaf_residues(y, values, self.k):
                entries.append((x + w, y + w))
        return Morphism(entries, self.k)

    # -- classification and inversion ----------------------------------

    def classify(self) -> MorphismClass:
        m = self.maximal_extension()
        vals = [y for _, y in m.table]
        injective = len(set(vals)) == len(vals) and code_kind(vals, self.k) is not CodeKind.NOT_A_CODE
        total = m.domain_code().kind is CodeKind.MAXIMAL_CODE
        surjective = m.image_code().kind is CodeKind.MAXIMAL_CODE
        return MorphismClass(injective=injective, total=total, surjective=surjective)

    def invert(self) -> "Morphism":
        """Inverse of an injective element (table flipped, then canonicalized)."""
        m = self.maximal_extension()
        if not m.classify().injective:
            raise NotInjectiveError(f"{self} is not injective")
        return Morphism(((y, x) for x, y in m.table), self.k).maximal_extension()

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        return {"k": self.k, "table": [[x, y] for x, y in self.table]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> "Morphism":
        if not isinstance(data, dict) or "k" not in data or "table" not in data:
            raise ValueError('table JSON must be an object with "k" and "table" keys')
        k = data["k"]
        table = data["table"]
        if not isinstance(table, list) or any(
            not isinstance(row, (list, tuple)) or len(row) != 2 for row in table
        ):
            raise ValueError('"table" must be a list of [domain, image] word pairs')
        return cls(((str(x), str(y)) for x, y in table), k)

    @classmethod
    def loads(cls, text: str) -> "Morphism":
        return cls.from_json(json.loads(text))

    @classmethod
    def from_file(cls, path) -> "Morphism":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _saturated_leaf_residues(q, zset, k):
    """Residues w such that q w is a leaf of the saturated prefix tree
    sT(q, Z) where Z = {z in zset : q is a prefix of z}.

    A single-vertex tree is its own saturation, yielding {""}.
    """
    vertices = set()
    for z in zset:
        if z.startswith(q):
            r = z[len(q):]
            for i in range(len(r) + 1):
                vertices.add(r[:i])
    leaves = {v for v in vertices if not any(v + letter(a) in vertices for a in range(k))}
    out = set(leaves)
    for v in vertices - leaves:
        for a in range(k):
            child = v + letter(a)
            if child not in vertices:
                out.add(child)
    return out


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """Module-level alias for raw composition outer o inner."""
    return outer.compose(inner)


def multiply(outer: Morphism, inner: Morphism) -> Morphism:
    """Module-level alias for the monoid product outer * inner."""
    return outer.multiply(inner)
