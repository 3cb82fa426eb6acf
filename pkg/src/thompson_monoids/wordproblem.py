"""Acyclic DFAs for finite prefix codes and the word-problem deciders.

A finite language is a prefix code exactly when it is accepted by an
acyclic DFA with a single accept state, and such a DFA can be
exponentially smaller than the language it accepts.  The polynomial
decider never materializes the composed table: it compares image codes
of the two sides, restricts both to the common image ideal, and then
checks, for each word r of a small covering set, that the inverse
images of {r} under the two generator sequences are accepted by
equivalent DFAs.  The brute-force decider evaluates both sides
pointwise on every word of the critical length and is the testing
oracle.

Sequences of morphisms are ordered like generator words: leftmost
entry outermost (applied last).
"""

from concurrent.futures import ThreadPoolExecutor

from .codes import PrefixCode, essentially_equal, ideal_intersection
from .morphisms import Morphism
from .structure import GenWord, parse_genword
from .words import check_alphabet, letter, letter_index, word_str


class PreconditionError(ValueError):
    """A morphism violates the assumptions of the DFA construction."""


class ResourceLimitError(RuntimeError):
    """An operation exceeded its configured size cap."""


class BoundTooSmallError(ValueError):
    """Enumeration bound below the automaton's longest path."""


class AcyclicDfa:
    """Partial deterministic acyclic automaton with one accept state.

    States are 0..n_states-1; transitions is a dict (state, letter
    index) -> state.  The empty language is the distinguished 0-state
    automaton (start = accept = -1).
    """

    __slots__ = ("k", "n_states", "start", "accept", "transitions")

    def __init__(self, k, n_states, start, accept, transitions):
        check_alphabet(k)
        transitions = dict(transitions)
        if n_states == 0:
            if transitions or start != -1 or accept != -1:
                raise ValueError("the empty automaton has no states and no edges")
        else:
            if not (0 <= start < n_states and 0 <= accept < n_states):
                raise ValueError("start/accept state out of range")
            outdeg = {}
            for (s, a), t in transitions.items():
                if not (0 <= s < n_states and 0 <= t < n_states and 0 <= a < k):
                    raise ValueError(f"bad transition ({s},{a})->{t}")
                outdeg[s] = outdeg.get(s, 0) + 1
            if outdeg.get(accept, 0):
                raise ValueError("accept state must have no outgoing edges")
            _check_acyclic(n_states, transitions)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n_states", n_states)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "accept", accept)
        object.__setattr__(self, "transitions", transitions)

    def __setattr__(self, name, value):
        raise AttributeError("AcyclicDfa is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, AcyclicDfa)
            and (self.k, self.n_states, self.start, self.accept) ==
                (other.k, other.n_states, other.start, other.accept)
            and self.transitions == other.transitions
        )

    def __repr__(self):
        return f"AcyclicDfa(k={self.k}, states={self.n_states}, edges={len(self.transitions)})"

    @property
    def size(self):
        return self.n_states

    @classmethod
    def empty(cls, k):
        return cls(k, 0, -1, -1, {})

    @classmethod
    def for_word(cls, r, k):
        """Chain automaton accepting exactly {r}."""
        transitions = {(i, letter_index(c)): i + 1 for i, c in enumerate(r)}
        return cls(k, len(r) + 1, 0, len(r), transitions)

    def longest_path(self):
        if self.n_states == 0:
            return 0
        depth = [0] * self.n_states
        for s in reversed(_topo_order(self.n_states, self.transitions)):
            best = 0
            for a in range(self.k):
                t = self.transitions.get((s, a))
                if t is not None:
                    best = max(best, 1 + depth[t])
            depth[s] = best
        return depth[self.start]

    # -- export ---------------------------------------------------------

    def to_json(self):
        edges = sorted([s, a, t] for (s, a), t in self.transitions.items())
        return {
            "states": self.n_states,
            "start": self.start,
            "accept": self.accept,
            "edges": edges,
        }

    @classmethod
    def from_json(cls, data, k):
        try:
            transitions = {(s, a): t for s, a, t in data["edges"]}
            return cls(k, data["states"], data["start"], data["accept"], transitions)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad DFA JSON: {exc}") from exc

    def to_dot(self, name="dfa"):
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  hidden [shape=point, style=invis];']
        for s in range(self.n_states):
            shape = "doublecircle" if s == self.accept else "circle"
            lines.append(f'  q{s} [shape={shape}, label="{s}"];')
        if self.n_states:
            lines.append(f"  hidden -> q{self.start};")
        for (s, a), t in sorted(self.transitions.items()):
            lines.append(f'  q{s} -> q{t} [label="{letter(a)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _check_acyclic(n, transitions):
    _topo_order(n, transitions)


def _topo_order(n, transitions):
    adj = [[] for _ in range(n)]
    for (s, _a), t in transitions.items():
        adj[s].append(t)
    state = [0] * n  # 0 unseen, 1 on stack, 2 done
    order = []
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, iter(adj[root]))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if state[nxt] == 1:
                    raise ValueError("automaton graph has a directed cycle")
                if state[nxt] == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
            if not advanced:
                state[node] = 2
                order.append(node)
                stack.pop()
    order.reverse()
    return order


def dfa_for_word(r, k):
    return AcyclicDfa.for_word(r, k)


def enumerate_language(dfa: AcyclicDfa, bound: int):
    """The whole (finite) accepted language, by path enumeration.

    `bound` must be at least the automaton's longest path length.
    """
    longest = dfa.longest_path()
    if bound < longest:
        raise BoundTooSmallError(f"bound {bound} below longest path {longest}")
    if dfa.n_states == 0:
        return set()
    out = set()
    stack = [(dfa.start, "")]
    while stack:
        s, w = stack.pop()
        if s == dfa.accept:
            out.add(w)
        for a in range(dfa.k):
            t = dfa.transitions.get((s, a))
            if t is not None:
                stack.append((t, w + letter(a)))
    return out


def check_wp_morphism(phi: Morphism, label="morphism"):
    """Enforce the decider's per-factor assumptions: normal, codes != {eps}."""
    if not phi.is_normal():
        raise PreconditionError(f"{label}: table is not normal")
    dom = phi.domain_code().words
    if dom == ("",):
        raise PreconditionError(f"{label}: domain code is {{()}}")
    if phi.image_code().words == ("",):
        raise PreconditionError(f"{label}: image code is {{()}}")


def inverse_image_dfa(phi: Morphism, dfa: AcyclicDfa, prune=True) -> AcyclicDfa:
    """Acyclic DFA accepting {x : phi(x) in L(dfa)}.

    Two glued parts: the prefix tree of domC(phi) without its leaves,
    and the part of `dfa` reachable by reading imC(phi)-extensions; an
    edge that would enter a leaf p jumps to the state of `dfa` reached
    on phi(p).  The state count is strictly below
    size(dfa) + total length of domC(phi).  With prune=True the
    non-(co)accessible states are removed afterwards.
    """
    if phi.k != dfa.k:
        raise ValueError("alphabet mismatch")
    check_wp_morphism(phi)
    k = phi.k
    if dfa.n_states == 0 or phi.is_zero:
        return AcyclicDfa.empty(k)

    def walk(word):
        s = dfa.start
        for c in word:
            s = dfa.transitions.get((s, letter_index(c)))
            if s is None:
                return None
        return s

    # part 2: states of dfa reachable on words with a prefix in imC(phi)
    part2 = set()
    frontier = []
    for q in phi.image_code().words:
        s = walk(q)
        if s is not None and s not in part2:
            part2.add(s)
            frontier.append(s)
    while frontier:
        s = frontier.pop()
        for a in range(k):
            t = dfa.transitions.get((s, a))
            if t is not None and t not in part2:
                part2.add(t)
                frontier.append(t)
    if dfa.accept not in part2:
        return AcyclicDfa.empty(k)

    dom = phi.domain_code().words
    tree = sorted({x[:i] for x in dom for i in range(len(x))})
    ids = {("t", v): n for n, v in enumerate(tree)}
    for s in sorted(part2):
        ids[("d", s)] = len(ids)
    transitions = {}
    dom_set = set(dom)
    tree_set = set(tree)
    for v in tree:
        for a in range(k):
            child = v + letter(a)
            if child in tree_set:
                transitions[(ids[("t", v)], a)] = ids[("t", child)]
            elif child in dom_set:
                target = walk(phi.apply(child))
                if target is not None:
                    transitions[(ids[("t", v)], a)] = ids[("d", target)]
    for s in part2:
        for a in range(k):
            t = dfa.transitions.get((s, a))
            if t is not None:
                transitions[(ids[("d", s)], a)] = ids[("d", t)]
    result = AcyclicDfa(
        k, len(ids), ids[("t", "")], ids[("d", dfa.accept)], transitions
    )
    return _prune(result) if prune else result


def _prune(dfa: AcyclicDfa) -> AcyclicDfa:
    """Drop states not on a start-to-accept path; empty automaton if none remain."""
    if dfa.n_states == 0:
        return dfa
    k = dfa.k
    fwd = {dfa.start}
    stack = [dfa.start]
    succ = {}
    pred = {}
    for (s, a), t in dfa.transitions.items():
        succ.setdefault(s, []).append(t)
        pred.setdefault(t, []).append(s)
    while stack:
        s = stack.pop()
        for t in succ.get(s, ()):
            if t not in fwd:
                fwd.add(t)
                stack.append(t)
    bwd = {dfa.accept}
    stack = [dfa.accept]
    while stack:
        s = stack.pop()
        for t in pred.get(s, ()):
            if t not in bwd:
                bwd.add(t)
                stack.append(t)
    keep = fwd & bwd
    if dfa.start not in keep or dfa.accept not in keep:
        return AcyclicDfa.empty(k)
    remap = {s: n for n, s in enumerate(sorted(keep))}
    transitions = {
        (remap[s], a): remap[t]
        for (s, a), t in dfa.transitions.items()
        if s in keep and t in keep
    }
    return AcyclicDfa(k, len(keep), remap[dfa.start], remap[dfa.accept], transitions)


def iterated_inverse_image_dfa(seq, dfa: AcyclicDfa, prune=True) -> AcyclicDfa:
    """DFA for the inverse image of L(dfa) under the composite of `seq`.

    `seq` is outermost-first, so the outermost factor is processed
    first; the final size is below size(dfa) plus the summed domain
    code lengths.
    """
    for phi in seq:
        dfa = inverse_image_dfa(phi, dfa, prune=prune)
    return dfa


def dfa_equivalent(a: AcyclicDfa, b: AcyclicDfa) -> bool:
    """Exact language equality, by breadth-first product traversal.

    Missing transitions go to an implicit dead state; a reachable pair
    disagreeing on acceptance witnesses inequivalence.
    """
    if a.k != b.k:
        raise ValueError("alphabet mismatch")
    dead = -1

    def accepting(dfa, s):
        return s != dead and dfa.n_states > 0 and s == dfa.accept

    start_a = a.start if a.n_states else dead
    start_b = b.start if b.n_states else dead
    seen = set()
    stack = [(start_a, start_b)]
    while stack:
        u, v = stack.pop()
        if (u, v) in seen:
            continue
        seen.add((u, v))
        if accepting(a, u) != accepting(b, v):
            return False
        if u == dead and v == dead:
            continue
        for x in range(a.k):
            nu = dead if u == dead else a.transitions.get((u, x), dead)
            nv = dead if v == dead else b.transitions.get((v, x), dead)
            if (nu, nv) not in seen:
                stack.append((nu, nv))
    return True


# ---------------------------------------------------------------------------
# Image codes and covering sets of compositions, without materialization


def imc_of_genword(seq, k) -> PrefixCode:
    """imC of the raw composite of `seq` (outermost first), via the
    intersection/image recurrence; never builds the composed table."""
    check_alphabet(k)
    if not seq:
        return PrefixCode([""], k)
    inner_first = list(reversed(seq))
    current = inner_first[0].image_code()
    for phi in inner_first[1:]:
        meet = ideal_intersection(current, phi.domain_code())
        if not len(meet):
            return PrefixCode((), k)
        images = sorted({phi.apply(s) for s in meet})
        minimal = []
        for w in images:
            if not (minimal and w.startswith(minimal[-1])):
                minimal.append(w)
        current = PrefixCode._trusted(minimal, k)
    return current


def covering_image_set(seq, k):
    """A finite superset of (composite)(domC(composite)), as the union of
    the per-factor image sets pushed through the outer factors."""
    check_alphabet(k)
    if not seq:
        return {""}
    acc = set()
    for phi in reversed(seq):
        pushed = set()
        for w in acc:
            img = phi.apply(w)
            if img is not None:
                pushed.add(img)
        acc = pushed | phi.value_set()
    return acc


# ---------------------------------------------------------------------------
# Word problem


def resolve_genword(word, k, tau_cap=None):
    """GenWord (or text) to a checked list of tables, outermost first."""
    if isinstance(word, str):
        word = parse_genword(word, k)
    if word.k != k:
        raise ValueError(f"generator word is over k={word.k}, expected {k}")
    out = []
    for pos, tok in enumerate(word.tokens):
        if tok.tau_depth is not None and tau_cap is not None and tok.tau_depth > tau_cap:
            raise ResourceLimitError(
                f"token {pos + 1} ({tok.text}): tau depth exceeds cap {tau_cap}"
            )
        m = tok.morphism(k)
        check_wp_morphism(m, label=f"token {pos + 1} ({tok.text})")
        out.append(m)
    return out


def word_problem_poly(w1, w2, k=2, tau_cap=8, parallel=False) -> bool:
    """Decide equality of two generator words in polynomial time.

    Compares image codes for essential equality, restricts both sides
    to the common image ideal by prepending a partial identity, then
    tests DFA equivalence of the inverse images of each covering word.
    Composed tables are never materialized (tau tokens are expanded,
    subject to tau_cap).
    """
    side1 = resolve_genword(w1, k, tau_cap)
    side2 = resolve_genword(w2, k, tau_cap)
    q1 = imc_of_genword(side1, k)
    q2 = imc_of_genword(side2, k)
    if not len(q1) or not len(q2):
        return len(q1) == len(q2)
    if not essentially_equal(q1, q2):
        return False
    shared = ideal_intersection(q1, q2)
    if shared.words == ("",):
        shared = PrefixCode([letter(a) for a in range(k)], k)
    ident = Morphism.identity(shared)
    seq1 = [ident] + side1
    seq2 = [ident] + side2
    targets = sorted(covering_image_set(seq1, k) | covering_image_set(seq2, k))

    def agree_on(r):
        d1 = iterated_inverse_image_dfa(seq1, dfa_for_word(r, k))
        d2 = iterated_inverse_image_dfa(seq2, dfa_for_word(r, k))
        return dfa_equivalent(d1, d2)

    if parallel:
        with ThreadPoolExecutor() as pool:
            return all(pool.map(agree_on, targets))
    return all(agree_on(r) for r in targets)


class _TauApplier:
    __slots__ = ("i", "j")

    def __init__(self, i, j):
        self.i = i
        self.j = j

    @property
    def weight(self):
        return self.j

    def apply(self, w):
        i, j = self.i, self.j
        if len(w) < j:
            return None
        return w[: i - 1] + w[j - 1] + w[i:j - 1] + w[i - 1] + w[j:]


class _TableApplier:
    __slots__ = ("m", "weight")

    def __init__(self, m):
        self.m = m
        self.weight = m.max_word_length()

    def apply(self, w):
        return self.m.apply(w)


def word_problem_bruteforce(w1, w2, k=2, n_cap=14) -> bool:
    """Decide equality by evaluating both sides on every word of the
    critical length N (the larger of the two summed factor lengths).

    Exponential in N; tau tokens are applied positionally, never
    expanded into tables.  This is the testing oracle for the
    polynomial decider.
    """
    sides = []
    for word in (w1, w2):
        if isinstance(word, str):
            word = parse_genword(word, k)
        if word.k != k:
            raise ValueError(f"generator word is over k={word.k}, expected {k}")
        appliers = []
        for tok in word.tokens:
            if tok.tau_positions is not None:
                appliers.append(_TauApplier(*tok.tau_positions))
            else:
                appliers.append(_TableApplier(tok.table))
        sides.append(appliers)
    critical = max(
        (sum(app.weight for app in side) for side in sides), default=0
    )
    if critical > n_cap:
        raise ResourceLimitError(f"critical length {critical} exceeds cap {n_cap}")

    chains = [list(reversed(side)) for side in sides]  # innermost first

    def evaluate_at(chain, x):
        for app in chain:
            x = app.apply(x)
            if x is None:
                return None
        return x

    from itertools import product as iproduct

    alphabet = [letter(a) for a in range(k)]
    for tup in iproduct(alphabet, repeat=critical):
        x = "".join(tup)
        if evaluate_at(chains[0], x) != evaluate_at(chains[1], x):
            return False
    return True
