"""
Finite generating sets and constructive decomposition into them.

Three families are built.  The first covers the label-free group: the n
tree-pair generators plus one braid generator for every irreducible pure
generator, where A[i,j] in the m-strand group is irreducible when no block
of n consecutive strands could be merged by a reduction (i <= n, j-i <= n,
m-j < n).  The second family adds, for a context with k named generators,
the n*k single-label elements over the one-caret tree.  The third trades
braid generators for labeled ones over the full pure braid context.

decompose() rewrites an arbitrary element as a word in a chosen family:
tree parts through the tree-pair factorization, braid letters through
membership or the merging of inert strand blocks, and labels through
expansion walks from the one-caret base elements.  Whatever those routes
miss (braid letters outside the third family's member list, label
positions no walk reaches) is solved from the expansion relations of
smaller elements by a per-level fixpoint.  Correctness is established by
round-trip verification, not by construction, and verify_generating()
runs exactly that.
"""

from __future__ import annotations

import dataclasses
import json
import random
import time

from . import bfgroup as bf
from . import trees as tr
from .bfgroup import BFElement, HContext
from .braid import AWord, cable_letter
from .trees import Tree, TreePair, fn_factorize, right_comb


class GeneratorSetError(ValueError):
    """Raised for malformed sets or member lookup failures."""


class VerificationError(RuntimeError):
    """Raised when a decomposition round trip fails; carries the element."""


@dataclasses.dataclass(frozen=True)
class PureGeneratorSpec:
    """A pure generator A[i,j] inside the braid group on m strands."""

    strands: int
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j <= self.strands:
            raise GeneratorSetError(f"bad generator spec ({self.i},{self.j}) in {self.strands}")


def is_n_irreducible(spec: PureGeneratorSpec, arity: int) -> bool:
    """No block of n consecutive strands is inert: i <= n, j-i <= n, m-j < n."""
    return spec.i <= arity and spec.j - spec.i <= arity and spec.strands - spec.j < arity


def enumerate_irreducible(arity: int) -> tuple[PureGeneratorSpec, ...]:
    """
    All irreducible specs over the admissible strand counts.  Counts above
    4n-3 admit none, so the scan stops there; the per-count profile is
    pinned by the generator-count tests.
    """
    n = arity
    out = []
    m = n
    while m <= 4 * n - 3:
        for i in range(1, m):
            for j in range(i + 1, m + 1):
                spec = PureGeneratorSpec(m, i, j)
                if is_n_irreducible(spec, n):
                    out.append(spec)
        m += n - 1
    return tuple(out)


@dataclasses.dataclass(frozen=True)
class GeneratorSet:
    """A named list of elements over a shared context."""

    context: HContext
    members: tuple[tuple[str, BFElement], ...]

    def __post_init__(self):
        seen = set()
        for name, element in self.members:
            if name in seen:
                raise GeneratorSetError(f"duplicate member name {name!r}")
            seen.add(name)
            if element.context != self.context:
                raise GeneratorSetError(f"member {name!r} has a foreign context")

    def __len__(self) -> int:
        return len(self.members)

    def index_of(self, name: str) -> int:
        for k, (mname, _) in enumerate(self.members, start=1):
            if mname == name:
                return k
        raise GeneratorSetError(f"no member named {name!r}")

    def element(self, index: int) -> BFElement:
        return self.members[abs(index) - 1][1]


def _brown_members(context: HContext) -> list[tuple[str, BFElement]]:
    return [
        (f"f{k}", bf.from_tree_pair(context, pair))
        for k, pair in enumerate(tr.brown_generator_pairs(context.arity), start=1)
    ]


def _braid_member(context: HContext, spec: PureGeneratorSpec) -> tuple[str, BFElement]:
    comb = right_comb(context.arity, spec.strands)
    word = AWord(spec.strands, ((spec.i, spec.j, 1),))
    element = BFElement(context, comb, word, ((),) * spec.strands, comb)
    return (f"b{spec.strands}_{spec.i}_{spec.j}", element)


def _label_members(context: HContext) -> list[tuple[str, BFElement]]:
    n = context.arity
    caret = Tree.caret(n)
    out = []
    for position in range(1, n + 1):
        for idx, (name, _) in enumerate(context.generators, start=1):
            labels = tuple((idx,) if p == position else () for p in range(1, n + 1))
            element = BFElement(context, caret, AWord.identity(n), labels, caret)
            out.append((f"l{position}_{name}", element))
    return out


def gen1_set(arity: int) -> GeneratorSet:
    """Generators of the label-free group: tree pairs plus all irreducible braids."""
    context = bf.trivial_context(arity)
    members = _brown_members(context)
    members += [_braid_member(context, spec) for spec in enumerate_irreducible(arity)]
    return GeneratorSet(context, tuple(members))


def gen2_set(arity: int, context: HContext) -> GeneratorSet:
    """gen1 over the given context plus the n*k single-label base elements."""
    if context.arity != arity:
        raise GeneratorSetError("context arity mismatch")
    members = _brown_members(context)
    members += [_braid_member(context, spec) for spec in enumerate_irreducible(arity)]
    members += _label_members(context)
    return GeneratorSet(context, tuple(members))


def gen3_set(arity: int) -> GeneratorSet:
    """
    Generators over the full pure braid context: tree pairs, the irreducible
    braids with j-i = n or m = n, and all single-label base elements.
    """
    context = bf.pn_context(arity)
    members = _brown_members(context)
    members += [
        _braid_member(context, spec)
        for spec in enumerate_irreducible(arity)
        if spec.j - spec.i == arity or spec.strands == arity
    ]
    members += _label_members(context)
    return GeneratorSet(context, tuple(members))


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

def _invert_word(word: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


# A relation factor is either a fixed member word ("word", letters) or an
# atom reference ("atom", key, sign) with key = ("L", i, j) or ("S", t, g).
_Factor = tuple


class _Decomposer:
    """
    Rewriting engine for one generator set, with per-set memo tables.

    Two atom families are rewritten into member words: braid letters
    L(m,i,j) standing for (comb_m, A[i,j], trivial labels, comb_m), and
    singles S(m,t,g) standing for (comb_m, 1, generator g at position t,
    comb_m).  Atoms not directly expressible (irreducible braid letters
    outside the member list; label positions t >= 2 with m-t divisible by
    n-1, which no expansion walk reaches) are solved level by level from
    the expansion relations of smaller atoms:

        splitting strand j of A[i,j] in the (m-n+1)-strand group equates a
        descending product of braid letters at m with the letter below
        (likewise for strand i), and

        splitting the labeled strand of a single equates a braid block and
        a window of n singles at m with the single below.

    Each strand-count level yields a triangular system that a fixpoint scan
    solves one atom at a time.
    """

    def __init__(self, genset: GeneratorSet):
        self.genset = genset
        self.context = genset.context
        self.arity = genset.context.arity
        self.index = {name: k for k, (name, _) in enumerate(genset.members, start=1)}
        self._braid_cache: dict[tuple[int, int, int], tuple[int, ...]] = {}
        self._label_cache: dict[tuple[int, int, int], tuple[int, ...]] = {}
        self._solved_levels: set[int] = set()
        self._missing: set[tuple] = set()

    def _member(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise GeneratorSetError(f"member lookup failure: {name!r} "
                                    "is not in the generator set") from None

    def _lift_pair_word(self, pair: TreePair) -> tuple[int, ...]:
        """Tree-pair factorization mapped onto the f-members."""
        word = fn_factorize(pair)
        out = []
        for letter in word:
            idx = self._member(f"f{abs(letter)}")
            out.append(idx if letter > 0 else -idx)
        return tuple(out)

    def _conj_words(self, src: Tree, dst: Tree) -> tuple[tuple[int, ...], tuple[int, ...]]:
        there = self._lift_pair_word(TreePair(src, dst))
        return there, _invert_word(there)

    def braid_letter_word(self, m: int, i: int, j: int, sign: int) -> tuple[int, ...]:
        """Word evaluating to (comb_m, A[i,j]^sign, trivial labels, comb_m)."""
        if sign < 0:
            return _invert_word(self.braid_letter_word(m, i, j, 1))
        key = (m, i, j)
        if key in self._braid_cache:
            return self._braid_cache[key]
        word = self._braid_base_word(m, i, j)
        if word is None:
            self._solve_level(m)
            if key not in self._braid_cache:
                raise GeneratorSetError(
                    f"member lookup failure: no route to A[{i},{j}] on {m} strands")
            return self._braid_cache[key]
        self._braid_cache[key] = word
        return word

    def _braid_base_word(self, m: int, i: int, j: int) -> tuple[int, ...] | None:
        """Member or inert-block-reduction route; None when the solver is needed."""
        n = self.arity
        name = f"b{m}_{i}_{j}"
        if name in self.index:
            return (self.index[name],)
        if is_n_irreducible(PureGeneratorSpec(m, i, j), n):
            return None
        # Merge an inert block of n strands: the element over the comb
        # equals, after a tree conjugation, an expansion of the same letter
        # in n-1 fewer strands.
        if i > n:
            t, i2, j2 = 1, i - n + 1, j - n + 1
        elif j - i > n:
            t, i2, j2 = i + 1, i, j - n + 1
        else:  # m - j >= n
            t, i2, j2 = j + 1, i, j
        small = m - n + 1
        bridge = right_comb(n, small).attach(t)
        there, back = self._conj_words(right_comb(n, m), bridge)
        return there + self.braid_letter_word(small, i2, j2, 1) + back

    def single_label_word(self, m: int, t: int, gen: int) -> tuple[int, ...]:
        """Word evaluating to (comb_m, 1, label gen at position t, comb_m)."""
        if gen < 0:
            return _invert_word(self.single_label_word(m, t, -gen))
        key = (m, t, gen)
        if key in self._label_cache:
            return self._label_cache[key]
        word = self._single_base_word(m, t, gen)
        if word is None:
            level = t + self.arity - 1  # equal to the element over the minimal comb
            self._solve_level(level)
            solved = self._label_cache.get((level, t, gen))
            if solved is None:
                raise GeneratorSetError(
                    f"member lookup failure: no route to a label at position {t} of {m}")
            self._label_cache[key] = solved
            return solved
        self._label_cache[key] = word
        return word

    def _single_base_word(self, m: int, t: int, gen: int) -> tuple[int, ...] | None:
        """
        Walk route: the element over the comb equals one over any tree whose
        labeled leaf is a child of the root, reached from a base member by
        expanding first the leftmost and then the last leaf.  Positions with
        m-t a positive multiple of n-1 (other than t = 1) admit no such tree
        and fall to the relation solver.
        """
        n = self.arity
        hname = self.context.generators[gen - 1][0]
        if m == 1:
            # Expand the lone labeled leaf: the label's braid appears on the
            # caret, with a copy of the label on every new strand.
            inner = bf.label_to_braid((gen,), self.context)
            out: list[int] = []
            for i, j, s in inner.letters:
                out.extend(self.braid_letter_word(n, i, j, s))
            for c in range(1, n + 1):
                out.extend(self.single_label_word(n, c, gen))
            return tuple(out)
        if t == 1:
            return (self._member(f"l1_{hname}"),)
        d = m - t
        excess = d % (n - 1)
        if d > 0 and excess == 0:
            return None
        small = t + excess  # trailing carets of the comb reduce away first
        if excess == 0:
            c, q, r = n, (small - n) // (n - 1), 0
        else:
            c = n - excess
            q = (t - c) // (n - 1)
            r = (small - n) // (n - 1) - q
        walk = Tree.caret(n)
        for _ in range(q):
            walk = walk.attach(1)
        for _ in range(r):
            walk = walk.attach(walk.leaf_count)
        there, back = self._conj_words(right_comb(n, small), walk)
        return there + (self._member(f"l{c}_{hname}"),) + back

    # -- relation solver ----------------------------------------------------

    def _solve_level(self, m: int) -> None:
        """
        Solve every braid-letter and single atom on m strands from the
        expansion relations of level m-n+1, one uniquely determined atom at
        a time.
        """
        if m in self._solved_levels:
            return
        self._solved_levels.add(m)
        n = self.arity
        small = m - n + 1
        hcount = len(self.context.generators)
        comb = right_comb(n, m)

        solved: dict[tuple, tuple[int, ...]] = {}
        unknown: set[tuple] = set()
        for i in range(1, m):
            for j in range(i + 1, m + 1):
                cached = self._braid_cache.get((m, i, j))
                word = cached if cached is not None else self._braid_base_word(m, i, j)
                if word is None:
                    unknown.add(("L", i, j))
                else:
                    solved[("L", i, j)] = word
        for t in range(1, m + 1):
            for g in range(1, hcount + 1):
                cached = self._label_cache.get((m, t, g))
                word = cached if cached is not None else self._single_base_word(m, t, g)
                if word is None and t + n - 1 < m:
                    # equal to the same single over a smaller comb
                    word = self.single_label_word(t + n - 1, t, g)
                if word is None:
                    unknown.add(("S", t, g))
                else:
                    solved[("S", t, g)] = word

        if not unknown:
            return

        # Expanding a level-(m-n+1) element at leaf t0 anchors it on the
        # tree comb[t0], so each relation carries conjugator words between
        # that tree and the comb on m leaves.
        relations: list[tuple[list[_Factor], tuple[int, ...]]] = []
        for t0 in range(1, small + 1):
            bridge = right_comb(n, small).attach(t0)
            to_comb, from_comb = self._conj_words(bridge, comb)
            for i0 in range(1, small):
                for j0 in range(i0 + 1, small + 1):
                    if t0 not in (i0, j0):
                        continue
                    rhs = self.braid_letter_word(small, i0, j0, 1)
                    factors: list[_Factor] = [("word", to_comb)]
                    factors += [("atom", ("L", a, b), s)
                                for a, b, s in cable_letter((i0, j0, 1), t0, n)]
                    factors.append(("word", from_comb))
                    relations.append((factors, rhs))
            for g in range(1, hcount + 1):
                rhs = self.single_label_word(small, t0, g)
                inner = bf.label_to_braid((g,), self.context)
                factors = [("word", to_comb)]
                factors += [("atom", ("L", u + t0 - 1, v + t0 - 1), s)
                            for u, v, s in inner.letters]
                factors += [("atom", ("S", p, g), 1) for p in range(t0, t0 + n)]
                factors.append(("word", from_comb))
                relations.append((factors, rhs))

        def factor_word(factor: _Factor) -> tuple[int, ...]:
            if factor[0] == "word":
                return factor[1]
            word = solved[factor[1]]
            return word if factor[2] > 0 else _invert_word(word)

        changed = True
        while changed and unknown:
            changed = False
            for factors, rhs in relations:
                open_positions = [q for q, factor in enumerate(factors)
                                  if factor[0] == "atom" and factor[1] not in solved]
                if len(open_positions) != 1:
                    continue
                q = open_positions[0]
                prefix: list[int] = []
                for factor in factors[:q]:
                    prefix.extend(factor_word(factor))
                suffix: list[int] = []
                for factor in factors[q + 1:]:
                    suffix.extend(factor_word(factor))
                word = _invert_word(tuple(prefix)) + rhs + _invert_word(tuple(suffix))
                _, key, sign = factors[q]
                if sign < 0:
                    word = _invert_word(word)
                solved[key] = word
                unknown.discard(key)
                changed = True

        for key, word in solved.items():
            if key[0] == "L":
                self._braid_cache.setdefault((m, key[1], key[2]), word)
            else:
                self._label_cache.setdefault((m, key[1], key[2]), word)
        for key in unknown:
            self._missing.add((m,) + key)

    def decompose(self, x: BFElement) -> tuple[int, ...]:
        if x.context != self.context:
            raise bf.ContextError("element context does not match the generator set")
        x = bf.reduce(x)
        n = self.arity
        m = x.leaf_count
        comb = right_comb(n, m)
        out: list[int] = []
        out.extend(self._lift_pair_word(TreePair(x.t1, comb)))
        for i, j, s in x.braid.letters:
            out.extend(self.braid_letter_word(m, i, j, s))
        for t, label in enumerate(x.labels, start=1):
            for letter in label:
                out.extend(self.single_label_word(m, t, letter))
        out.extend(self._lift_pair_word(TreePair(comb, x.t2)))
        reduced: list[int] = []
        for letter in out:
            if reduced and reduced[-1] == -letter:
                reduced.pop()
            else:
                reduced.append(letter)
        return tuple(reduced)


def decompose(x: BFElement, genset: GeneratorSet) -> tuple[int, ...]:
    """Write x as a word of signed 1-based member indices of the set."""
    return _Decomposer(genset).decompose(x)


def evaluate_word(word: tuple[int, ...], genset: GeneratorSet) -> BFElement:
    """Multiply out a decomposition word."""
    factors = (
        genset.element(letter) if letter > 0 else bf.inverse(genset.element(letter))
        for letter in word
    )
    return bf.evaluate_product(factors, genset.context)


@dataclasses.dataclass
class VerifyReport:
    """Round-trip witness for a generating set: all samples must re-multiply."""

    set_name: str
    arity: int
    set_size: int
    samples: int
    successes: int
    word_lengths: list[int]
    sample_seconds: list[float]
    elapsed_seconds: float

    @property
    def success_rate(self) -> float:
        return self.successes / self.samples if self.samples else 1.0

    @property
    def max_word_length(self) -> int:
        return max(self.word_lengths, default=0)

    def to_json(self) -> str:
        doc = dataclasses.asdict(self)
        doc["success_rate"] = self.success_rate
        doc["max_word_length"] = self.max_word_length
        return json.dumps(doc, sort_keys=True)

    def summary(self) -> str:
        return (
            f"{self.set_name} n={self.arity}: {self.successes}/{self.samples} round trips, "
            f"max word {self.max_word_length}, {self.elapsed_seconds:.1f}s"
        )


def verify_generating(
    genset: GeneratorSet,
    samples: int,
    seed: int,
    *,
    set_name: str = "set",
    max_leaves: int = 9,
    max_braid_letters: int = 16,
    max_label_letters: int = 4,
) -> VerifyReport:
    """
    Decompose seeded random elements and re-multiply them.  Any failed round
    trip aborts with the offending element serialized in the error message.
    """
    rng = random.Random(seed)
    engine = _Decomposer(genset)
    lengths: list[int] = []
    times: list[float] = []
    successes = 0
    start = time.perf_counter()
    for _ in range(samples):
        t0 = time.perf_counter()
        x = bf.random_element(
            genset.context, rng,
            max_leaves=max_leaves,
            max_braid_letters=max_braid_letters,
            max_label_letters=max_label_letters,
        )
        word = engine.decompose(x)
        value = evaluate_word(word, genset)
        if not bf.equal(value, x):
            raise VerificationError(
                f"decomposition round trip failed for element {bf.to_json(x)}")
        successes += 1
        lengths.append(len(word))
        times.append(time.perf_counter() - t0)
    return VerifyReport(
        set_name=set_name,
        arity=genset.context.arity,
        set_size=len(genset),
        samples=samples,
        successes=successes,
        word_lengths=lengths,
        sample_seconds=times,
        elapsed_seconds=time.perf_counter() - start,
    )
