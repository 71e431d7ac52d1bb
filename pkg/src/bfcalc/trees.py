"""
Full n-ary trees, caret expansions, tree joins and the slope order on tree
pairs.

A tree is stored by the sorted tuple of its leaf addresses, an address being
a tuple of child indices in 0..n-1 (the root is the empty tuple).  For a
full tree the leaf set determines everything else: the internal nodes are
exactly the proper prefixes of the leaves.  This representation makes the
minimal common expansion of two trees a set union and tree equality
structural.

A TreePair (domain, codomain) with equal leaf counts represents the
piecewise-affine homeomorphism of [0,1] sending the k-th leaf interval of
the domain tree affinely onto the k-th leaf interval of the codomain tree.
The sign of such a pair is read off the first pair of corresponding leaf
intervals of different length.
"""

from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from typing import Iterator

Address = tuple[int, ...]

NEGATIVE, ZERO, POSITIVE = -1, 0, 1


class TreeError(ValueError):
    """Raised for malformed trees or invalid leaf indices."""


class ExpansionError(ValueError):
    """Raised when a tree is not an expansion of another."""


class FactorizationError(RuntimeError):
    """Raised when a tree-pair factorization fails its self-check."""


def _kraft_sum_is_one(arity: int, leaves: tuple[Address, ...]) -> bool:
    # sum of n^(D - depth) over leaves must be n^D for D = max depth
    depth = max((len(a) for a in leaves), default=0)
    total = sum(arity ** (depth - len(a)) for a in leaves)
    return total == arity**depth


@dataclasses.dataclass(frozen=True)
class Tree:
    """A finite full n-ary tree, given by its sorted leaf addresses."""

    arity: int
    leaves: tuple[Address, ...]

    def __post_init__(self):
        n = self.arity
        if n < 2:
            raise TreeError(f"arity must be >= 2, got {n}")
        if not self.leaves:
            raise TreeError("a tree has at least one leaf")
        if list(self.leaves) != sorted(self.leaves):
            raise TreeError("leaf addresses must be sorted")
        for addr in self.leaves:
            if any(d < 0 or d >= n for d in addr):
                raise TreeError(f"address digit out of range in {addr}")
        for a, b in itertools.pairwise(self.leaves):
            if b[: len(a)] == a:
                raise TreeError(f"leaf {a} is a prefix of leaf {b}")
        if not _kraft_sum_is_one(n, self.leaves):
            raise TreeError("leaf set is not a complete full-tree cover")

    @staticmethod
    def single(arity: int) -> Tree:
        """The one-leaf tree."""
        return Tree(arity, ((),))

    @staticmethod
    def caret(arity: int) -> Tree:
        """The one-caret tree R with n leaves."""
        return Tree(arity, tuple((d,) for d in range(arity)))

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    def nodes(self) -> frozenset[Address]:
        """All addresses of the tree: leaves plus every proper prefix."""
        out: set[Address] = set()
        for addr in self.leaves:
            for k in range(len(addr) + 1):
                out.add(addr[:k])
        return frozenset(out)

    def depths(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.leaves)

    def attach(self, i: int) -> Tree:
        """Attach a caret to the i-th leaf (1-based), written T[i]."""
        return attach_caret(self, i)

    def caret_window(self, i: int) -> bool:
        """True if leaves i..i+n-1 (1-based) are the full child set of one node."""
        n = self.arity
        if not 1 <= i <= self.leaf_count - n + 1:
            return False
        window = self.leaves[i - 1 : i - 1 + n]
        parent = window[0][:-1]
        return all(window[d] == parent + (d,) for d in range(n)) if window[0] else False

    def remove_caret(self, i: int) -> Tree:
        """Inverse of attach: merge leaves i..i+n-1 back into their parent."""
        if not self.caret_window(i):
            raise TreeError(f"no removable caret at leaf window {i}")
        n = self.arity
        parent = self.leaves[i - 1][:-1]
        new = self.leaves[: i - 1] + (parent,) + self.leaves[i - 1 + n :]
        return Tree(self.arity, new)


def attach_caret(tree: Tree, i: int) -> Tree:
    """Return T[i]: the tree with a caret attached to the i-th leaf (1-based)."""
    if not 1 <= i <= tree.leaf_count:
        raise TreeError(f"leaf index {i} out of range 1..{tree.leaf_count}")
    addr = tree.leaves[i - 1]
    children = tuple(addr + (d,) for d in range(tree.arity))
    return Tree(tree.arity, tree.leaves[: i - 1] + children + tree.leaves[i:])


def leaf_addresses(tree: Tree) -> tuple[Address, ...]:
    """Leaf addresses in left-to-right (lexicographic) order."""
    return tree.leaves


def right_comb(arity: int, leaf_count: int) -> Tree:
    """The right comb: carets attached recursively to the last leaf."""
    tree = Tree.single(arity)
    while tree.leaf_count < leaf_count:
        tree = tree.attach(tree.leaf_count)
    if tree.leaf_count != leaf_count:
        raise TreeError(f"{leaf_count} is not a valid leaf count for arity {arity}")
    return tree


def expansion_script(tree: Tree, target: Tree) -> tuple[int, ...]:
    """
    A sequence of 1-based leaf indices whose successive caret attachments
    turn `tree` into `target`.  Raises ExpansionError if `target` is not an
    expansion of `tree`.
    """
    if tree.arity != target.arity:
        raise ExpansionError("arity mismatch")
    target_nodes = target.nodes()
    if not tree.nodes() <= target_nodes:
        raise ExpansionError("target is not an expansion of the tree")
    script: list[int] = []
    cur = tree
    while cur != target:
        for idx, leaf in enumerate(cur.leaves):
            if leaf + (0,) in target_nodes:
                cur = cur.attach(idx + 1)
                script.append(idx + 1)
                break
        else:
            raise ExpansionError("target is not an expansion of the tree")
    return tuple(script)


def join(tree: Tree, other: Tree) -> tuple[Tree, tuple[int, ...], tuple[int, ...]]:
    """
    The minimal common expansion of two trees, together with the caret
    scripts that produce it from each input.  The union of two full
    prefix-closed address sets is again full and prefix-closed, and it is
    contained in every common expansion.
    """
    if tree.arity != other.arity:
        raise TreeError("arity mismatch")
    nodes = tree.nodes() | other.nodes()
    leaves = tuple(sorted(a for a in nodes if a + (0,) not in nodes))
    joined = Tree(tree.arity, leaves)
    return joined, expansion_script(tree, joined), expansion_script(other, joined)


@dataclasses.dataclass(frozen=True)
class NAdicInterval:
    """The interval [num/n^depth, (num+1)/n^depth] assigned to a leaf."""

    numerator: int
    depth: int

    def __post_init__(self):
        if self.depth < 0 or self.numerator < 0:
            raise TreeError("invalid interval data")

    def length(self, arity: int) -> Fraction:
        return Fraction(1, arity**self.depth)

    def left(self, arity: int) -> Fraction:
        return Fraction(self.numerator, arity**self.depth)


def leaf_interval(tree: Tree, i: int) -> NAdicInterval:
    """The n-adic interval of the i-th leaf: the address read base n."""
    if not 1 <= i <= tree.leaf_count:
        raise TreeError(f"leaf index {i} out of range 1..{tree.leaf_count}")
    addr = tree.leaves[i - 1]
    num = 0
    for d in addr:
        num = num * tree.arity + d
    return NAdicInterval(num, len(addr))


@dataclasses.dataclass(frozen=True)
class TreePair:
    """An element representative of the slope group: two trees, equal leaf counts."""

    domain: Tree
    codomain: Tree

    def __post_init__(self):
        if self.domain.arity != self.codomain.arity:
            raise TreeError("arity mismatch in tree pair")
        if self.domain.leaf_count != self.codomain.leaf_count:
            raise TreeError("leaf count mismatch in tree pair")

    @property
    def arity(self) -> int:
        return self.domain.arity

    @property
    def leaf_count(self) -> int:
        return self.domain.leaf_count


def fn_sign(pair: TreePair) -> int:
    """
    Sign of a tree pair under the slope order: scan corresponding leaves in
    order and look at the first pair whose intervals have different lengths.
    The pair is positive when the domain leaf is deeper, i.e. when the slope
    there is a positive power of n.  Zero forces equal trees, since the
    left-to-right depth sequence determines a full n-ary tree.
    """
    for d_dom, d_cod in zip(pair.domain.depths(), pair.codomain.depths()):
        if d_dom != d_cod:
            return POSITIVE if d_dom > d_cod else NEGATIVE
    return ZERO


def pair_expand(pair: TreePair, i: int) -> TreePair:
    """Attach a caret at leaf i of both trees (the defining relation)."""
    return TreePair(pair.domain.attach(i), pair.codomain.attach(i))


def pair_multiply(f: TreePair, g: TreePair) -> TreePair:
    """
    Compose two pairs, f first then g: expand both along the join of
    f.codomain and g.domain and drop the matched middle tree.  The result is
    not reduced.
    """
    if f.arity != g.arity:
        raise TreeError("arity mismatch")
    _, script_f, script_g = join(f.codomain, g.domain)
    dom = f.domain
    for k in script_f:
        dom = dom.attach(k)
    cod = g.codomain
    for k in script_g:
        cod = cod.attach(k)
    return TreePair(dom, cod)


def pair_inverse(f: TreePair) -> TreePair:
    return TreePair(f.codomain, f.domain)


def pair_reduce(f: TreePair) -> TreePair:
    """Cancel matching carets present at the same leaf window of both trees."""
    n = f.arity
    cur = f
    changed = True
    while changed:
        changed = False
        for i in range(1, cur.leaf_count - n + 2):
            if cur.domain.caret_window(i) and cur.codomain.caret_window(i):
                cur = TreePair(cur.domain.remove_caret(i), cur.codomain.remove_caret(i))
                changed = True
                break
    return cur


def pair_is_identity(f: TreePair) -> bool:
    reduced = pair_reduce(f)
    return reduced.domain == reduced.codomain


def brown_generator_pairs(arity: int) -> tuple[TreePair, ...]:
    """
    The n standard generating pairs: (R[n], R[i]) for i = 1..n-1 together
    with (R[n][2n-1], R[n][n]), where R is the one-caret tree.
    """
    n = arity
    caret = Tree.caret(n)
    pairs = [TreePair(caret.attach(n), caret.attach(i)) for i in range(1, n)]
    base = caret.attach(n)
    pairs.append(TreePair(base.attach(2 * n - 1), base.attach(n)))
    return tuple(pairs)


def evaluate_brown_word(arity: int, word: tuple[int, ...]) -> TreePair:
    """Multiply out a word of signed 1-based indices into the n generating pairs."""
    gens = brown_generator_pairs(arity)
    acc = TreePair(Tree.single(arity), Tree.single(arity))
    for letter in word:
        g = gens[abs(letter) - 1]
        acc = pair_multiply(acc, g if letter > 0 else pair_inverse(g))
        acc = pair_reduce(acc)
    return acc


def _reduce_signed(word: Iterator[int]) -> tuple[int, ...]:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _leftmost_caret_window(tree: Tree) -> int:
    n = tree.arity
    for i in range(1, tree.leaf_count - n + 2):
        if tree.caret_window(i):
            return i
    raise TreeError("tree with more than one leaf has no caret")


def _minimal_valid_count_above(arity: int, i: int) -> int:
    m = max(i + 1, arity)
    while (m - 1) % (arity - 1) != 0:
        m += 1
    return m


def _elementary_pair(arity: int, i: int) -> TreePair:
    """The pair (C[i], C[last]) over the smallest comb C with more than i leaves."""
    m = _minimal_valid_count_above(arity, i)
    comb = right_comb(arity, m)
    return TreePair(comb.attach(i), comb.attach(m))


_XI_WORDS: dict[tuple[int, int], tuple[int, ...]] = {}


def _xi_word(arity: int, i: int) -> tuple[int, ...]:
    """
    The elementary pair with index i written over the n generating pairs.
    For i <= n it is the inverse of the i-th generator; higher indices are
    rewritten through the conjugation identity and each rewrite is verified
    once against pair evaluation.
    """
    key = (arity, i)
    if key in _XI_WORDS:
        return _XI_WORDS[key]
    if i <= arity:
        word: tuple[int, ...] = (-i,)
    else:
        word = _reduce_signed(iter((1,) + _xi_word(arity, i - arity + 1) + (-1,)))
    check = pair_multiply(evaluate_brown_word(arity, word), pair_inverse(_elementary_pair(arity, i)))
    if not pair_is_identity(check):
        raise FactorizationError(f"elementary-pair rewrite failed for index {i}, arity {arity}")
    _XI_WORDS[key] = word
    return word


def comb_conjugator_word(tree: Tree) -> tuple[int, ...]:
    """
    Word over the generating pairs evaluating to (tree, comb with the same
    leaf count).  Carets are peeled off the tree one at a time; a peel at
    leaf position i of the smaller tree contributes the elementary pair with
    index i, except that peels at the last leaf merely extend the comb spine
    and contribute nothing.
    """
    n = tree.arity
    removed: list[int] = []
    cur = tree
    while cur != right_comb(n, cur.leaf_count):
        i = _leftmost_caret_window(cur)
        cur = cur.remove_caret(i)
        if i != cur.leaf_count:
            removed.append(i)
    letters: list[int] = []
    for i in reversed(removed):
        letters.extend(_xi_word(n, i))
    return _reduce_signed(iter(letters))


def fn_factorize(pair: TreePair) -> tuple[int, ...]:
    """
    Write a tree pair as a word in the n generating pairs (signed 1-based
    indices).  The word is finite but not minimal; evaluating it with
    pair_multiply gives back the input pair up to reduction.
    """
    reduced = pair_reduce(pair)
    if reduced.domain == reduced.codomain:
        return ()
    left = comb_conjugator_word(reduced.domain)
    right = comb_conjugator_word(reduced.codomain)
    inverse_right = tuple(-x for x in reversed(right))
    return _reduce_signed(iter(left + inverse_right))
