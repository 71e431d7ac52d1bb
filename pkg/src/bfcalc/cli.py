"""
Command-line calculator.

A session is declared by flags: --arity fixes n, repeated --hgen NAME=WORD
flags declare the label subgroup generators as braid words, and repeated
--let NAME=EXPR flags bind element names.  Element expressions follow

    element := "{" tree ";" braid ";" "[" label ("," label)* "]" ";" tree "}"
    tree    := "*" | "(" tree ("," tree)+ ")"
    braid   := (A-letter)*            A-letter := A[i,j] | A[i,j]^-1
    label   := "1" | (name | name^-1)+

Exit codes: 0 on success, 1 for syntax or usage errors, 2 for semantic
invariant violations (bad arities, strand bounds, unknown names, foreign
contexts) and for verification failures.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bfgroup as bf
from . import generators as gen
from . import selftest
from .bfgroup import BFElement, HContext
from .braid import AWord, BraidError, SigmaWord
from .freegroup import FreeWord, WordError, reduce_word
from .render import render_svg, render_text
from .trees import Tree, TreeError

SIGN_NAMES = {bf.NEGATIVE: "negative", bf.ZERO: "zero", bf.POSITIVE: "positive"}
ORDER_NAMES = {bf.LESS: "less", bf.EQUAL: "equal", bf.GREATER: "greater"}


class CliSyntaxError(ValueError):
    """Malformed input text; carries a position."""

    def __init__(self, message: str, line: int = 1, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class CliSemanticError(ValueError):
    """Structurally parseable input that violates an invariant."""


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _location(self) -> tuple[int, int]:
        prefix = self.text[: self.pos]
        line = prefix.count("\n") + 1
        column = self.pos - (prefix.rfind("\n") + 1)
        return line, column

    def error(self, message: str) -> CliSyntaxError:
        return CliSyntaxError(message, *self._location())

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != char:
            raise self.error(f"expected {char!r}")
        self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def take_until(self, char: str) -> str:
        """Raw text up to (not including) the next occurrence of char."""
        where = self.text.find(char, self.pos)
        if where < 0:
            raise self.error(f"expected {char!r} later in the input")
        segment = self.text[self.pos : where]
        self.pos = where
        return segment


def _parse_tree(scanner: _Scanner, arity_hint: int | None) -> tuple:
    """Returns a nested tuple: () for a leaf, (children...) otherwise."""
    ch = scanner.peek()
    if ch == "*":
        scanner.pos += 1
        return ()
    if ch != "(":
        raise scanner.error("expected '*' or '('")
    scanner.expect("(")
    children = [_parse_tree(scanner, arity_hint)]
    while scanner.peek() == ",":
        scanner.expect(",")
        children.append(_parse_tree(scanner, arity_hint))
    scanner.expect(")")
    return tuple(children)


def _nested_arity(nested: tuple, found: set[int]) -> None:
    if nested == ():
        return
    found.add(len(nested))
    for child in nested:
        _nested_arity(child, found)


def _nested_to_tree(nested: tuple, arity: int) -> Tree:
    widths: set[int] = set()
    _nested_arity(nested, widths)
    if widths - {arity}:
        raise CliSemanticError(
            f"tree has nodes of width {sorted(widths - {arity})}, expected arity {arity}")
    leaves: list[tuple[int, ...]] = []

    def walk(node: tuple, prefix: tuple[int, ...]) -> None:
        if node == ():
            leaves.append(prefix)
            return
        for d, child in enumerate(node):
            walk(child, prefix + (d,))

    walk(nested, ())
    return Tree(arity, tuple(sorted(leaves)))


def parse_tree_text(text: str, arity: int) -> Tree:
    scanner = _Scanner(text)
    nested = _parse_tree(scanner, arity)
    if not scanner.at_end():
        raise scanner.error("trailing input after tree")
    return _nested_to_tree(nested, arity)


def _parse_a_letter(token: str) -> tuple[int, int, int]:
    sign = 1
    body = token
    if body.endswith("^-1"):
        sign = -1
        body = body[:-3]
    if not (body.startswith("A[") and body.endswith("]")):
        raise CliSyntaxError(f"bad braid letter {token!r}")
    inner = body[2:-1].split(",")
    if len(inner) != 2:
        raise CliSyntaxError(f"bad braid letter {token!r}")
    try:
        i, j = int(inner[0]), int(inner[1])
    except ValueError:
        raise CliSyntaxError(f"bad braid letter {token!r}") from None
    return (i, j, sign)


def parse_a_word(text: str, strands: int) -> AWord:
    """Whitespace-separated A-letters."""
    letters = []
    for token in text.split():
        if not token.startswith("A"):
            raise CliSyntaxError(f"expected an A-letter, got {token!r}")
        letters.append(_parse_a_letter(token))
    try:
        return AWord(strands, tuple(letters))
    except BraidError as exc:
        raise CliSemanticError(str(exc)) from None


def parse_sigma_word(text: str, strands: int) -> SigmaWord:
    """Whitespace-separated crossing letters: s3, s3^-1."""
    letters = []
    for token in text.split():
        sign = 1
        body = token
        if body.endswith("^-1"):
            sign = -1
            body = body[:-3]
        if not body.startswith("s"):
            raise CliSyntaxError(f"bad crossing letter {token!r}")
        try:
            letters.append(sign * int(body[1:]))
        except ValueError:
            raise CliSyntaxError(f"bad crossing letter {token!r}") from None
    try:
        return SigmaWord(strands, tuple(letters))
    except BraidError as exc:
        raise CliSemanticError(str(exc)) from None


def parse_free_word(text: str, rank: int) -> FreeWord:
    """Whitespace-separated free-group letters: x3, x3^-1."""
    letters = []
    for token in text.split():
        sign = 1
        body = token
        if body.endswith("^-1"):
            sign = -1
            body = body[:-3]
        if not body.startswith("x"):
            raise CliSyntaxError(f"bad free-group letter {token!r}")
        try:
            letters.append(sign * int(body[1:]))
        except ValueError:
            raise CliSyntaxError(f"bad free-group letter {token!r}") from None
    try:
        return reduce_word(rank, letters)
    except WordError as exc:
        raise CliSemanticError(str(exc)) from None


def _parse_label(text: str, context: HContext) -> tuple[int, ...]:
    text = text.strip()
    if text == "1" or not text:
        return ()
    letters = []
    for token in text.split():
        sign = 1
        name = token
        if name.endswith("^-1"):
            sign = -1
            name = name[:-3]
        try:
            idx = context.generator_index(name)
        except bf.ContextError as exc:
            raise CliSemanticError(str(exc)) from None
        letters.append(sign * idx)
    return tuple(letters)


def parse_element(text: str, context: HContext) -> BFElement:
    """Parse the braced element grammar against a declared session context."""
    scanner = _Scanner(text)
    scanner.expect("{")
    t1_nested = _parse_tree(scanner, context.arity)
    scanner.expect(";")
    braid_text = scanner.take_until(";")
    scanner.expect(";")
    scanner.expect("[")
    labels_raw = scanner.take_until("]")
    scanner.expect("]")
    scanner.expect(";")
    t2_nested = _parse_tree(scanner, context.arity)
    scanner.expect("}")
    if not scanner.at_end():
        raise scanner.error("trailing input after element")

    t1 = _nested_to_tree(t1_nested, context.arity)
    t2 = _nested_to_tree(t2_nested, context.arity)
    braid = parse_a_word(braid_text, t1.leaf_count)
    labels = tuple(_parse_label(part, context) for part in labels_raw.split(","))
    try:
        return BFElement(context, t1, braid, labels, t2)
    except (bf.ElementError, bf.ContextError) as exc:
        raise CliSemanticError(str(exc)) from None


def format_tree(tree: Tree) -> str:
    def emit(prefix: tuple[int, ...]) -> str:
        if prefix in set(tree.leaves):
            return "*"
        return "(" + ",".join(emit(prefix + (d,)) for d in range(tree.arity)) + ")"

    return emit(())


def format_element(x: BFElement) -> str:
    braid = " ".join(
        f"A[{i},{j}]" + ("^-1" if s < 0 else "") for i, j, s in x.braid.letters)
    labels = []
    for label in x.labels:
        if not label:
            labels.append("1")
        else:
            labels.append(" ".join(
                x.context.generators[abs(v) - 1][0] + ("^-1" if v < 0 else "")
                for v in label))
    return (f"{{ {format_tree(x.t1)} ; {braid} ; [ {', '.join(labels)} ] ; "
            f"{format_tree(x.t2)} }}")


# ---------------------------------------------------------------------------
# Session and commands
# ---------------------------------------------------------------------------

class Session:
    """Declared context plus named element bindings."""

    def __init__(self, arity: int, hgens: list[str], lets: list[str]):
        gens = []
        for spec in hgens:
            if "=" not in spec:
                raise CliSyntaxError(f"--hgen needs NAME=WORD, got {spec!r}")
            name, word = spec.split("=", 1)
            gens.append((name.strip(), parse_a_word(word, arity)))
        try:
            self.context = HContext(arity, tuple(gens))
        except bf.ContextError as exc:
            raise CliSemanticError(str(exc)) from None
        self.bindings: dict[str, BFElement] = {}
        for spec in lets:
            if "=" not in spec:
                raise CliSyntaxError(f"--let needs NAME=EXPR, got {spec!r}")
            name, expr = spec.split("=", 1)
            self.bindings[name.strip()] = self.resolve(expr)

    def resolve(self, text: str) -> BFElement:
        name = text.strip()
        if name in self.bindings:
            return self.bindings[name]
        if name.startswith("{"):
            return parse_element(name, self.context)
        raise CliSyntaxError(f"unknown element name {name!r}")


def _generator_set(name: str, arity: int, context: HContext) -> gen.GeneratorSet:
    if name == "gen1":
        return gen.gen1_set(arity)
    if name == "gen2":
        return gen.gen2_set(arity, context)
    if name == "gen3":
        return gen.gen3_set(arity)
    raise CliSemanticError(f"unknown generator set {name!r}")


def _print_element(x: BFElement, as_json: bool) -> None:
    print(bf.to_json(x) if as_json else format_element(x))


def _cmd_parse(args, session: Session) -> int:
    _print_element(session.resolve(args.element), args.json)
    return 0


def _cmd_mul(args, session: Session) -> int:
    elements = [session.resolve(e) for e in args.elements]
    acc = elements[0]
    for other in elements[1:]:
        acc = bf.multiply(acc, other)
    _print_element(bf.reduce(acc) if args.reduce else acc, args.json)
    return 0


def _cmd_inv(args, session: Session) -> int:
    _print_element(bf.inverse(session.resolve(args.element)), args.json)
    return 0


def _cmd_cmp(args, session: Session) -> int:
    result = bf.compare(session.resolve(args.left), session.resolve(args.right))
    print(ORDER_NAMES[result])
    return 0


def _cmd_sign(args, session: Session) -> int:
    x = session.resolve(args.element)
    value = bf.pvb_sign(x) if args.pvb else bf.bf_sign(x)
    print(SIGN_NAMES[value])
    return 0


def _cmd_reduce(args, session: Session) -> int:
    _print_element(bf.reduce(session.resolve(args.element)), args.json)
    return 0


def _cmd_expand(args, session: Session) -> int:
    _print_element(bf.expand(session.resolve(args.element), args.leaf), args.json)
    return 0


def _cmd_decompose(args, session: Session) -> int:
    x = session.resolve(args.element)
    genset = _generator_set(args.set, session.context.arity, session.context)
    if genset.context != x.context:
        raise CliSemanticError(
            "element context does not match the chosen generator set "
            "(declare matching --hgen flags)")
    word = gen.decompose(x, genset)
    names = [
        ("" if letter > 0 else "~") + genset.members[abs(letter) - 1][0]
        for letter in word
    ]
    if args.json:
        print(json.dumps({"word": list(word), "names": names}))
    else:
        print(" ".join(names) if names else "1")
    if args.verify:
        value = gen.evaluate_word(word, genset)
        if not bf.equal(value, x):
            raise gen.VerificationError("decomposition failed to re-multiply")
        print(f"verified: {len(word)} letters", file=sys.stderr)
    return 0


def _cmd_gens(args, session: Session) -> int:
    genset = _generator_set(args.set, session.context.arity, session.context)
    if args.json:
        doc = [{"name": name, "element": json.loads(bf.to_json(el))}
               for name, el in genset.members]
        print(json.dumps(doc))
    else:
        for name, el in genset.members:
            print(f"{name}: {format_element(el)}")
    return 0


def _cmd_count(args, session: Session) -> int:
    arity = session.context.arity
    if args.irreducible:
        value = len(gen.enumerate_irreducible(arity))
    elif args.gen1:
        value = len(gen.gen1_set(arity))
    elif args.gen2:
        if args.hgens_count is not None:
            value = len(gen.gen1_set(arity)) + arity * args.hgens_count
        else:
            value = len(gen.gen2_set(arity, session.context))
    elif args.gen3:
        value = len(gen.gen3_set(arity))
    else:
        raise CliSemanticError("choose one of --gen1/--gen2/--gen3/--irreducible")
    print(value)
    return 0


def _cmd_render(args, session: Session) -> int:
    x = session.resolve(args.element)
    document = render_svg(x) if args.format == "svg" else render_text(x)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as handle:
            handle.write(document)
        print(f"wrote {args.svg}")
    else:
        print(document)
    return 0


def _cmd_selftest(args, session: Session) -> int:
    results = selftest.run_suite(args.suite, session.context.arity,
                                 args.samples, args.seed)
    failed = False
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"[{status}] {result.name} {result.params} "
              f"({result.elapsed_seconds:.1f}s)")
        for line in result.lines():
            print(line)
        failed = failed or not result.passed
    if args.json:
        doc = [{"name": r.name, "params": r.params, "passed": r.passed,
                "checks": [dataclass_check(c) for c in r.checks]}
               for r in results]
        print(json.dumps(doc))
    if failed:
        raise gen.VerificationError("selftest suite reported violations")
    return 0


def dataclass_check(check) -> dict:
    return {"label": check.label, "violations": check.violations, "total": check.total}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        raise CliSyntaxError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--arity", type=int, default=2,
                        help="arity of the session (default 2)")
    common.add_argument("--hgen", action="append", default=[], metavar="NAME=WORD",
                        help="declare a label-subgroup generator (repeatable)")
    common.add_argument("--let", action="append", default=[], metavar="NAME=EXPR",
                        help="bind an element name (repeatable)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="bfcalc",
                     description="calculator for pure braided tree-diagram groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common]); p.add_argument("element")
    p.set_defaults(func=_cmd_parse)
    p = sub.add_parser("mul", parents=[common])
    p.add_argument("elements", nargs="+")
    p.add_argument("--reduce", action="store_true")
    p.set_defaults(func=_cmd_mul)
    p = sub.add_parser("inv", parents=[common]); p.add_argument("element")
    p.set_defaults(func=_cmd_inv)
    p = sub.add_parser("cmp", parents=[common])
    p.add_argument("left"); p.add_argument("right")
    p.set_defaults(func=_cmd_cmp)
    p = sub.add_parser("sign", parents=[common])
    p.add_argument("element"); p.add_argument("--pvb", action="store_true")
    p.set_defaults(func=_cmd_sign)
    p = sub.add_parser("reduce", parents=[common]); p.add_argument("element")
    p.set_defaults(func=_cmd_reduce)
    p = sub.add_parser("expand", parents=[common])
    p.add_argument("element"); p.add_argument("leaf", type=int)
    p.set_defaults(func=_cmd_expand)
    p = sub.add_parser("decompose", parents=[common])
    p.add_argument("element")
    p.add_argument("--set", required=True, choices=("gen1", "gen2", "gen3"))
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=_cmd_decompose)
    p = sub.add_parser("gens", parents=[common])
    p.add_argument("--set", required=True, choices=("gen1", "gen2", "gen3"))
    p.set_defaults(func=_cmd_gens)
    p = sub.add_parser("count", parents=[common])
    p.add_argument("--gen1", action="store_true")
    p.add_argument("--gen2", action="store_true")
    p.add_argument("--gen3", action="store_true")
    p.add_argument("--irreducible", action="store_true")
    p.add_argument("-k", "--hgens-count", type=int, default=None,
                   help="generator count of H for --gen2")
    p.set_defaults(func=_cmd_count)
    p = sub.add_parser("render", parents=[common])
    p.add_argument("element")
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--format", choices=("svg", "text"), default="svg")
    p.set_defaults(func=_cmd_render)
    p = sub.add_parser("selftest", parents=[common])
    p.add_argument("--suite", default="all",
                   choices=("all", "generating", "orders", "signstability",
                            "braidlayer", "groupaxioms"))
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        session = Session(args.arity, args.hgen, args.let)
        return args.func(args, session)
    except CliSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CliSemanticError, bf.ElementError, bf.ContextError, TreeError,
            BraidError, gen.GeneratorSetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except gen.VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
