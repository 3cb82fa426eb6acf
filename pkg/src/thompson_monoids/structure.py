"""Generating sets, generator words, Green's relations, factorization.

Generator words are sequences of tokens, leftmost token outermost
(applied last).  The named tokens are the explicit two-letter
generating set (the four bijections Not, (01<->1), (0<->10), tau(1,2),
the four injective ideal shifts, and the two collapsing maps M1, M2);
position transpositions tau(i,j) and inline table literals are
available over any alphabet.
"""

import re
from dataclasses import dataclass, field
from itertools import product

from .codes import CodeKind, PrefixCode, equalize_sizes, make_q_code, saturate
from .morphisms import Morphism
from .words import check_alphabet, letter


class UnsupportedAlphabetError(ValueError):
    """Raised when a named-generator operation is requested for k != 2."""


# The ten tables of the two-letter generating set.  The ideal shifts
# whose raw one-line tables would have domain or image code {""} are
# stored in essentially restricted normal form, as required by the
# DFA-based word problem (EtoZ is (eps -> 0), ZtoE is (0 -> eps)).
_NAMED_TABLES = {
    "Not": {"0": "1", "1": "0"},
    "S01_1": {"00": "00", "01": "1", "1": "01"},
    "S0_10": {"0": "10", "10": "0", "11": "11"},
    "EtoZ": {"0": "00", "1": "01"},
    "ZtoE": {"00": "0", "01": "1"},
    "ZtoZZ": {"0": "00"},
    "ZZtoZ": {"00": "0"},
    "M1": {"0": "0", "1": "0"},
    "M2": {"00": "00", "01": "01", "1": "01"},
}

_NAME_INVERSE = {
    "Not": "Not",
    "S01_1": "S01_1",
    "S0_10": "S0_10",
    "EtoZ": "ZtoE",
    "ZtoE": "EtoZ",
    "ZtoZZ": "ZZtoZ",
    "ZZtoZ": "ZtoZZ",
}

_TAU_RE = re.compile(r"^tau\((\d+),(\d+)\)$", re.IGNORECASE)


def tau(i: int, j: int, k: int) -> Morphism:
    """Position transposition: swap letters i and j of every word of length >= j.

    The table lives on A^j and is already maximally extended; it has
    k^j rows, so word length over any finite generating set is
    exponential in j.
    """
    check_alphabet(k)
    if not 0 < i < j:
        raise ValueError(f"require 0 < i < j, got i={i}, j={j}")
    entries = []
    for tup in product(range(k), repeat=j):
        swapped = list(tup)
        swapped[i - 1], swapped[j - 1] = swapped[j - 1], swapped[i - 1]
        entries.append(
            ("".join(map(letter, tup)), "".join(map(letter, swapped)))
        )
    return Morphism(entries, k)


def standard_generators(k: int):
    """The explicit finite generating set, as (name, table) pairs; k = 2 only."""
    check_alphabet(k)
    if k != 2:
        raise UnsupportedAlphabetError(
            "named generating set is only defined for the 2-letter alphabet"
        )
    out = []
    for name in ("Not", "S01_1", "S0_10"):
        out.append((name, Morphism(_NAMED_TABLES[name].items(), 2)))
    out.append(("tau(1,2)", tau(1, 2, 2)))
    for name in ("EtoZ", "ZtoE", "ZtoZZ", "ZZtoZ", "M1", "M2"):
        out.append((name, Morphism(_NAMED_TABLES[name].items(), 2)))
    return out


# ---------------------------------------------------------------------------
# Generator words


@dataclass(frozen=True)
class Token:
    """One generator-word token: a named table, tau(i,j), or an inline table."""

    text: str
    tau_positions: tuple = None
    table: Morphism = None

    def morphism(self, k: int) -> Morphism:
        if self.tau_positions is not None:
            return tau(*self.tau_positions, k)
        return self.table

    @property
    def tau_depth(self):
        return self.tau_positions[1] if self.tau_positions is not None else None


def named_token(name: str) -> Token:
    return Token(text=name, table=Morphism(_NAMED_TABLES[name].items(), 2))


def tau_token(i: int, j: int) -> Token:
    return Token(text=f"tau({i},{j})", tau_positions=(i, j))


def inline_token(m: Morphism) -> Token:
    return Token(text="@{" + m.dumps() + "}", table=m)


def invert_token(tok: Token) -> Token:
    if tok.tau_positions is not None:
        return tok
    if tok.text in _NAME_INVERSE:
        return named_token(_NAME_INVERSE[tok.text])
    return inline_token(tok.table.invert())


@dataclass(frozen=True)
class GenWord:
    """A word over the generator tokens; the empty word denotes the identity."""

    k: int
    tokens: tuple = field(default_factory=tuple)

    def __post_init__(self):
        check_alphabet(self.k)
        for tok in self.tokens:
            if tok.table is not None and tok.table.k != self.k:
                raise ValueError(
                    f"token {tok.text} is over a {tok.table.k}-letter alphabet, not {self.k}"
                )

    def __len__(self):
        return len(self.tokens)

    def text(self) -> str:
        return " ".join(tok.text for tok in self.tokens)

    def morphisms(self):
        """Token tables, leftmost (outermost) first."""
        return [tok.morphism(self.k) for tok in self.tokens]


def parse_genword(text: str, k: int = 2) -> GenWord:
    """Parse whitespace-separated tokens; leftmost is applied last.

    Inline tables are written @{file.json} or @{{"k":2,"table":[...]}}
    (no whitespace inside).  The empty string is the identity.
    """
    check_alphabet(k)
    tokens = []
    for pos, raw in enumerate(text.split()):
        m = _TAU_RE.match(raw)
        if m:
            i, j = int(m.group(1)), int(m.group(2))
            if not 0 < i < j:
                raise ValueError(f"token {pos + 1}: bad tau positions in {raw!r}")
            tokens.append(tau_token(i, j))
        elif raw.startswith("@{") and raw.endswith("}"):
            inner = raw[2:-1]
            table = Morphism.loads(inner) if inner.startswith("{") else Morphism.from_file(inner)
            if table.k != k:
                raise ValueError(f"token {pos + 1}: inline table has k={table.k}, expected {k}")
            tokens.append(inline_token(table))
        elif raw in _NAMED_TABLES:
            if k != 2:
                raise UnsupportedAlphabetError(
                    f"token {pos + 1}: named generator {raw!r} requires k=2"
                )
            tokens.append(named_token(raw))
        else:
            raise ValueError(f"token {pos + 1}: unknown generator token {raw!r}")
    return GenWord(k, tuple(tokens))


def evaluate(word, k: int = 2) -> Morphism:
    """Materialize a generator word as a monoid element.

    Folds the product over the tokens; the empty word gives the
    identity.  Accepts a GenWord or its text form.
    """
    if isinstance(word, str):
        word = parse_genword(word, k)
    ms = word.morphisms()
    if not ms:
        return Morphism.one(word.k)
    acc = ms[0].maximal_extension()
    for m in ms[1:]:
        acc = acc.multiply(m)
    return acc


def all_to_zero_word(n: int) -> GenWord:
    """The 2n-1 token word collapsing every length-n bitstring to "0".

    Its table has 2^n rows, exponentially more than the word length;
    it is the standard witness separating word length from table size.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    toks = []
    for _ in range(n - 1):
        toks.append(named_token("M1"))
        toks.append(named_token("ZtoE"))
    toks.append(named_token("M1"))
    return GenWord(2, tuple(toks))


# ---------------------------------------------------------------------------
# D-relation


@dataclass(frozen=True)
class DClassIndex:
    """Zero, or the residue of |imC| mod (k-1) normalized into 1..k-1."""

    residue: int = None

    @property
    def is_zero(self) -> bool:
        return self.residue is None

    def __str__(self):
        return "Zero" if self.is_zero else str(self.residue)


def d_class_index(phi: Morphism) -> DClassIndex:
    m = phi.maximal_extension()
    if m.is_zero:
        return DClassIndex(None)
    if phi.k == 2:
        return DClassIndex(1)
    r = len(m.image_code()) % (phi.k - 1)
    return DClassIndex(r if r else phi.k - 1)


@dataclass(frozen=True)
class GreenLink:
    """One verified step of a D-chain.

    relation "R": left = right * left_witness and right = left * right_witness.
    relation "L": left = left_witness * right and right = right_witness * left.
    relation "EQ": the two sides are the same monoid element.
    """

    relation: str
    left: Morphism
    right: Morphism
    left_witness: Morphism = None
    right_witness: Morphism = None

    def verify(self) -> bool:
        if self.relation == "EQ":
            return self.left.equal_in_m(self.right)
        if self.relation == "R":
            return self.right.multiply(self.left_witness).equal_in_m(
                self.left
            ) and self.left.multiply(self.right_witness).equal_in_m(self.right)
        if self.relation == "L":
            return self.left_witness.multiply(self.right).equal_in_m(
                self.left
            ) and self.right_witness.multiply(self.left).equal_in_m(self.right)
        raise ValueError(f"unknown relation {self.relation!r}")


def _r_link_to_partial_identity(phi: Morphism):
    """phi is R-related to the partial identity on its image code.

    Uses a set of representatives modulo phi: alpha maps each image
    word back to its dictionary-least preimage, so phi * alpha is a
    permutation of the image code and phi * (alpha * (phi*alpha)^-1)
    is the partial identity.
    """
    n = phi.maximal_extension().normalize()
    q = n.image_code()
    idq = Morphism.identity(q)
    rep = {}
    for x, y in n.table:
        if y not in rep or x < rep[y]:
            rep[y] = x
    alpha = Morphism(((y, rep[y]) for y in q.words), phi.k)
    perm = phi.multiply(alpha)
    back = alpha.multiply(perm.invert())
    return GreenLink("R", phi, idq, left_witness=phi, right_witness=back)


def _restrict_once(words, k):
    """One restriction step on a prefix code: split the least word into children."""
    least = min(words)
    rest = [w for w in words if w != least]
    rest.extend(least + letter(a) for a in range(k))
    return sorted(rest)


def d_witness(phi: Morphism, psi: Morphism):
    """A verified chain proving phi and psi D-related, or None.

    The chain runs phi =R= id_Q1 == id_Q1' =L= beta =R= id_Q2' == id_Q2
    =R= psi, where the partial-identity codes are equalized in size by
    restriction steps and beta is the dictionary-order bijection.
    Every link is re-multiplied and checked before returning.
    """
    if phi.k != psi.k:
        raise ValueError("morphisms over different alphabets")
    k = phi.k
    zero_phi = phi.maximal_extension().is_zero
    zero_psi = psi.maximal_extension().is_zero
    if zero_phi and zero_psi:
        chain = [GreenLink("EQ", phi, psi)]
    elif zero_phi or zero_psi:
        return None
    elif d_class_index(phi) != d_class_index(psi):
        return None
    else:
        link1 = _r_link_to_partial_identity(phi)
        link2 = _r_link_to_partial_identity(psi)
        q1, q2 = link1.right.domain_code(), link2.right.domain_code()
        w1, w2 = list(q1.words), list(q2.words)
        while len(w1) < len(w2):
            w1 = _restrict_once(w1, k)
        while len(w2) < len(w1):
            w2 = _restrict_once(w2, k)
        id1h = Morphism.identity(PrefixCode(w1, k))
        id2h = Morphism.identity(PrefixCode(w2, k))
        beta = Morphism(zip(w1, w2), k)
        chain = [link1]
        if tuple(w1) != q1.words:
            chain.append(GreenLink("EQ", link1.right, id1h))
        chain.append(GreenLink("L", id1h, beta, left_witness=beta.invert(), right_witness=beta))
        chain.append(GreenLink("R", beta, id2h, left_witness=beta, right_witness=beta.invert()))
        if tuple(w2) != q2.words:
            chain.append(GreenLink("EQ", id2h, link2.right))
        chain.append(
            GreenLink(
                "R",
                link2.right,
                psi,
                left_witness=link2.right_witness,
                right_witness=psi,
            )
        )
    for link in chain:
        if not link.verify():
            raise RuntimeError(f"D-witness link failed verification: {link.relation}")
    return chain


# ---------------------------------------------------------------------------
# Factorization over the generating set


def _deficiency(m: Morphism) -> int:
    return m.table_size - len(m.value_set())


def deficiency_split(phi: Morphism):
    """Stage one of factorization: split into tables of deficiency <= 1.

    Requires the value set of phi to be a prefix code (normalize
    first).  Repeatedly peels one duplicate off the class whose least
    domain word is dictionary-least: phi = psi2 o psi1 with psi1 the
    deficiency-one map x1 -> x2 (identity elsewhere) and psi2 the
    table without x1.  Returned outermost first.
    """
    classes = {}
    for x, y in phi.table:
        classes.setdefault(y, []).append(x)
    if phi.table_size - len(classes) <= 1:
        return [phi]
    y1 = min(
        (y for y, xs in classes.items() if len(xs) >= 2),
        key=lambda y: min(classes[y]),
    )
    x1, x2 = sorted(classes[y1])[:2]
    psi1 = Morphism(((x, x2 if x == x1 else x) for x, _ in phi.table), phi.k)
    psi2 = Morphism(((x, y) for x, y in phi.table if x != x1), phi.k)
    return deficiency_split(psi2) + [psi1]


def _canonical_code_words(n: int, k: int):
    """The standard prefix code of cardinality n >= 2, sorted; last element is a letter."""
    if n <= k:
        return [letter(a) for a in range(n)]
    i = 2 + (n - 2) % (k - 1)
    j = (n - i) // (k - 1)
    return sorted(make_q_code(i, j, k).words)


def _canonical_max_code_words(n_index: int, k: int):
    """The standard maximal prefix code of cardinality 1 + (k-1) * n_index, sorted."""
    if n_index == 0:
        return [""]
    return sorted(make_q_code(k, n_index - 1, k).words)


def _collapse_split(piece: Morphism):
    """Stage two: a deficiency-one table as psi3 o psi2 o psi1.

    psi1 and psi3 are bijections through the standard code C of size
    n = |domC(piece)|; psi2 collapses the last element of C onto the
    one before it.  The collapsed pair of the input is routed to the
    last two positions.
    """
    classes = {}
    for x, y in piece.table:
        classes.setdefault(y, []).append(x)
    doubled = next(y for y, xs in classes.items() if len(xs) == 2)
    pair = sorted(classes[doubled])
    ordered = sorted(x for x, _ in piece.table if x not in pair) + pair
    values = dict(piece.table)
    qs = [values[p] for p in ordered[:-1]]
    c = _canonical_code_words(len(ordered), piece.k)
    psi1 = Morphism(zip(ordered, c), piece.k)
    psi2 = Morphism(
        [(w, w) for w in c[:-1]] + [(c[-1], c[-2])], piece.k
    )
    psi3 = Morphism(zip(c[:-1], qs), piece.k)
    return psi3, psi2, psi1


def factor_pieces(phi: Morphism):
    """All stage-one/stage-two factors, outermost first; each has deficiency <= 1."""
    m = phi.maximal_extension()
    if m.is_zero:
        return [m]
    out = []
    for piece in deficiency_split(m.normalize()):
        if _deficiency(piece) == 1:
            out.extend(_collapse_split(piece))
        else:
            out.append(piece)
    return out


def _collapse_token(n: int, k: int) -> Token:
    """Token for the size-n collapse map (last element of C onto its neighbor)."""
    if k == 2:
        return named_token("M1" if n == 2 else "M2")
    if n <= k:
        i = n
    else:
        i = 2 + (n - 2) % (k - 1)
    if n <= k or i > 2:
        table = {letter(a): letter(a) for a in range(i - 1)}
        table[letter(i - 1)] = letter(i - 2)
    else:
        table = {letter(0): letter(0), letter(1): letter(0) + letter(k - 1)}
    return inline_token(Morphism(table.items(), k))


def _partial_identity_tokens(size: int, n_index: int, k: int):
    """Tokens for the identity on the first `size` elements of the standard
    maximal code of cardinality 1 + (k-1) * n_index."""
    c = _canonical_max_code_words(n_index, k)
    if k != 2:
        ident = Morphism.identity(PrefixCode(c[:size], k)).maximal_extension()
        return [inline_token(ident)]
    j = n_index - size
    if j == 0:
        return [named_token("ZZtoZ"), named_token("ZtoZZ")]
    b_word = [named_token("ZtoZZ")] * (j - 1) + [named_token("ZtoZZ"), named_token("ZZtoZ")]
    b_inv = [named_token("ZtoZZ"), named_token("ZZtoZ")] + [named_token("ZZtoZ")] * (j - 1)
    return b_word + b_inv


def _shift_tokens(depth: int, k: int):
    """Tokens for the ideal shift (eps -> a_1^depth)."""
    if k != 2:
        return [inline_token(Morphism.atom("", letter(0) * depth, k))]
    return [named_token("ZtoZZ")] * (depth - 1) + [named_token("EtoZ")]


def _injective_tokens(psi: Morphism):
    """Factor an injective table, by maximality case of its domain/image codes."""
    k = psi.k
    m = psi.maximal_extension()
    p_code = m.domain_code()
    q_code = m.image_code()
    p_max = p_code.kind is CodeKind.MAXIMAL_CODE
    q_max = q_code.kind is CodeKind.MAXIMAL_CODE
    if p_max and q_max:
        return [inline_token(m)]
    values = dict(m.table)
    p_sorted = sorted(p_code.words)
    if not p_max and not q_max:
        p_full, q_full = equalize_sizes(p_code, q_code)
        n_index = (len(p_full) - 1) // (k - 1)
        c = _canonical_max_code_words(n_index, k)
        p_rest = sorted(set(p_full.words) - set(p_code.words))
        g1 = Morphism(zip(c, p_sorted + p_rest), k)
        q_rest = sorted(set(q_full.words) - set(q_code.words))
        g2 = Morphism(
            [(values[p], c[t]) for t, p in enumerate(p_sorted)]
            + list(zip(q_rest, c[len(p_sorted):])),
            k,
        )
        mid = _partial_identity_tokens(len(p_sorted), n_index, k)
        return [inline_token(g2.invert())] + mid + [inline_token(g1.invert())]
    if p_max and not q_max:
        q_full = saturate(q_code)
        n_index = (len(p_code) - 1) // (k - 1)
        n_index_full = (len(q_full) - 1) // (k - 1)
        c = _canonical_max_code_words(n_index, k)
        c_full = _canonical_max_code_words(n_index_full, k)
        g1 = Morphism(zip(c, p_sorted), k)
        q_rest = sorted(set(q_full.words) - set(q_code.words))
        g2 = Morphism(
            [(values[p], c_full[t]) for t, p in enumerate(p_sorted)]
            + list(zip(q_rest, c_full[len(p_sorted):])),
            k,
        )
        mid = _shift_tokens(n_index_full - n_index, k)
        return [inline_token(g2.invert())] + mid + [inline_token(g1.invert())]
    # domain code non-maximal, image code maximal: factor the inverse
    inverse_tokens = _injective_tokens(m.invert())
    return [invert_token(tok) for tok in reversed(inverse_tokens)]


def zero_word(k: int) -> GenWord:
    """A fixed generator word evaluating to the zero element."""
    if k == 2:
        toks = (named_token("ZtoZZ"), named_token("S0_10"), named_token("ZtoZZ"))
    else:
        toks = (
            inline_token(Morphism.atom(letter(0), letter(0) * 2, k)),
            inline_token(Morphism.atom(letter(0) * 2, letter(1) + letter(0), k)),
        )
    return GenWord(k, toks)


def factor(phi: Morphism) -> GenWord:
    """A generator word whose evaluation equals phi in the monoid.

    Stage one splits into deficiency <= 1 tables, stage two routes each
    deficiency-one table through the standard collapse, and injective
    tables are factored by the maximality cases of their domain and
    image codes; leftover bijections between maximal codes are emitted
    as inline table tokens.
    """
    k = phi.k
    m = phi.maximal_extension()
    if m.is_zero:
        return zero_word(k)
    tokens = []
    for piece in deficiency_split(m.normalize()):
        if _deficiency(piece) == 1:
            psi3, psi2, psi1 = _collapse_split(piece)
            tokens.extend(_injective_tokens(psi3))
            tokens.append(_collapse_token(psi2.table_size, k))
            tokens.extend(_injective_tokens(psi1))
        else:
            tokens.extend(_injective_tokens(piece))
    return GenWord(k, tuple(tokens))
