"""Text and DOT serialization for oracle trees.

The text format is structural: one ``node <id> size=<n>`` line per node,
children indented two spaces below their parent, after a ``hrse-tree v1``
header. Round trips are bit-exact. Cost annotations are not serialized.
"""

from __future__ import annotations

from .tree import HrseTree, NodeAttr, ValidationReport, validate

HEADER = "hrse-tree v1"
INDENT = "  "


class ParseError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationFailure(Exception):
    """Parsed tree violates the structural size constraints."""

    def __init__(self, report: ValidationReport):
        super().__init__("tree failed validation:\n" + report.as_text())
        self.report = report


def serialize(tree: HrseTree) -> str:
    lines = [HEADER]

    def emit(nid: int, depth: int) -> None:
        lines.append(f"{INDENT * depth}node {nid} size={tree.nodes[nid].size}")
        for c in tree.children[nid]:
            emit(c, depth + 1)

    emit(tree.root, 0)
    return "\n".join(lines) + "\n"


def deserialize(text: str, allow_equal_size: bool = False, run_validation: bool = True) -> HrseTree:
    """Parse the text format back into a tree.

    Re-runs :func:`hrse.tree.validate` on the result unless ``run_validation``
    is off; violations raise :class:`ValidationFailure` with the full report.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError(1, f"expected header {HEADER!r}")

    nodes: dict[int, NodeAttr] = {}
    children: dict[int, list[int]] = {}
    stack: list[int] = []  # path of node ids from root to current parent
    root: int | None = None

    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        stripped = raw.lstrip(" ")
        pad = len(raw) - len(stripped)
        if pad % len(INDENT):
            raise ParseError(lineno, "indentation must be a multiple of two spaces")
        depth = pad // len(INDENT)
        parts = stripped.split()
        if len(parts) != 3 or parts[0] != "node" or not parts[2].startswith("size="):
            raise ParseError(lineno, f"expected 'node <id> size=<n>', got {stripped!r}")
        try:
            nid = int(parts[1])
            size = int(parts[2][len("size="):])
        except ValueError:
            raise ParseError(lineno, f"bad integer in {stripped!r}") from None
        if nid in nodes:
            raise ParseError(lineno, f"duplicate node id {nid}")
        if depth == 0:
            if root is not None:
                raise ParseError(lineno, "second root: document must contain a single tree")
            root = nid
        else:
            if depth > len(stack):
                raise ParseError(lineno, "indentation jumps more than one level")
            parent = stack[depth - 1]
            children[parent].append(nid)
        nodes[nid] = NodeAttr(size=size, depth=depth, out_degree=0)
        children[nid] = []
        del stack[depth:]
        stack.append(nid)

    if root is None:
        raise ParseError(len(lines), "document contains no nodes")

    attrs = {
        nid: NodeAttr(size=a.size, depth=a.depth, out_degree=len(children[nid]))
        for nid, a in nodes.items()
    }
    tree = HrseTree(nodes=attrs, children={n: tuple(c) for n, c in children.items()}, root=root)
    if run_validation:
        report = validate(tree, allow_equal_size=allow_equal_size)
        if not report.ok:
            raise ValidationFailure(report)
    return tree


def export_dot(tree: HrseTree) -> str:
    """Graphviz rendering with size and depth in each node label."""
    lines = ["digraph hrse {", "  rankdir=TB;"]
    for nid in tree.preorder():
        attr = tree.nodes[nid]
        lines.append(f'  n{nid} [label="#{nid} s={attr.size} d={attr.depth}"];')
    for nid in tree.preorder():
        for c in tree.children[nid]:
            lines.append(f"  n{nid} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"
