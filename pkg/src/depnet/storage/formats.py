# /src/depnet/storage/formats.py
# Text codecs for datasets, dependency networks, Bayesian networks and joint tables

from typing import Iterator, List, Sequence, Tuple

import numpy as np

from ..core.dataset import Dataset
from ..core.joint import JointTable
from ..core.space import VarSpace
from ..errors import FormatError
from ..models.bayesnet import BayesianNetwork
from ..models.cpt import Cpt, SelectionWeights
from ..models.depnet import DependencyNetwork


def fmt_prob(x: float) -> str:
    """17 significant digits: parses back to the same double."""
    return format(float(x), ".17g")


def fmt_report(x: float) -> str:
    """6 significant digits for TSV reports."""
    return format(float(x), ".6g")


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """(1-based line number, tokens) for every non-blank, non-comment line."""
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped.split()


def _ints(tokens: Sequence[str], line: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as e:
        raise FormatError(f"expected integers: {e}", line) from e


def _floats(tokens: Sequence[str], line: int) -> List[float]:
    try:
        return [float(t) for t in tokens]
    except ValueError as e:
        raise FormatError(f"expected numbers: {e}", line) from e


# ========== Dataset ==========

def format_dataset(d: Dataset) -> str:
    lines = ["vars " + " ".join(str(c) for c in d.space.cards)]
    lines.extend(" ".join(map(str, row)) for row in d.rows.tolist())
    return "\n".join(lines) + "\n"


def parse_dataset(text: str) -> Dataset:
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise FormatError("missing 'vars' header") from None
    if header[0] != "vars" or len(header) < 2:
        raise FormatError("first line must be 'vars <card…>'", number)
    space = VarSpace(tuple(_ints(header[1:], number)))
    rows = []
    for number, tokens in lines:
        if len(tokens) != space.n:
            raise FormatError(f"expected {space.n} values, got {len(tokens)}", number)
        rows.append(_ints(tokens, number))
    return Dataset(space, np.array(rows, dtype=np.int64).reshape(-1, space.n))


# ========== Networks ==========

def _format_cpt(cpt: Cpt, keyword: str) -> List[str]:
    lines = [f"node {cpt.child} {keyword}" + "".join(f" {i}" for i in cpt.inputs)]
    for y, row in enumerate(cpt.table):
        lines.append(f"row {y} " + " ".join(fmt_prob(v) for v in row))
    return lines


def _parse_nodes(text: str, header: str, keyword: str):
    """Shared reader for 'depnet' and 'bayesnet' files.

    Returns (node inputs, node tables, weights or None).
    """
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError(f"missing '{header}' header")
    number, first = lines[0]
    if first[0] != header or len(first) != 2:
        raise FormatError(f"first line must be '{header} <n>'", number)
    n = _ints(first[1:], number)[0]
    inputs: List[Tuple[int, ...]] = []
    tables: List[List[List[float]]] = []
    weights = None
    for number, tokens in lines[1:]:
        if tokens[0] == "node":
            if len(tokens) < 3 or tokens[2] != keyword:
                raise FormatError(f"expected 'node <i> {keyword} <ids…>'", number)
            node = _ints(tokens[1:2], number)[0]
            if node != len(inputs):
                raise FormatError(f"nodes must appear in order; got node {node}", number)
            inputs.append(tuple(_ints(tokens[3:], number)))
            tables.append([])
        elif tokens[0] == "row":
            if not tables:
                raise FormatError("row before any node", number)
            index = _ints(tokens[1:2], number)[0]
            if index != len(tables[-1]):
                raise FormatError(f"rows must appear in index order; got row {index}", number)
            tables[-1].append(_floats(tokens[2:], number))
        elif tokens[0] == "weights":
            weights = _floats(tokens[1:], number)
        else:
            raise FormatError(f"unknown record '{tokens[0]}'", number)
    if len(inputs) != n:
        raise FormatError(f"header announces {n} nodes; found {len(inputs)}")
    return inputs, tables, weights


def _build_cpts(inputs, tables) -> Tuple[VarSpace, List[Cpt]]:
    cards = []
    for i, rows in enumerate(tables):
        if not rows or len({len(r) for r in rows}) != 1:
            raise FormatError(f"node {i} has no rows or ragged rows")
        cards.append(len(rows[0]))
    space = VarSpace(tuple(cards))
    cpts = [Cpt.from_space(space, i, node_inputs, np.array(tables[i])) for i, node_inputs in enumerate(inputs)]
    return space, cpts


def format_depnet(dn: DependencyNetwork) -> str:
    lines = [f"depnet {dn.n}"]
    for cpt in dn.cpts:
        lines.extend(_format_cpt(cpt, "inputs"))
    lines.append("weights " + " ".join(fmt_prob(c) for c in dn.weights.c))
    return "\n".join(lines) + "\n"


def parse_depnet(text: str) -> DependencyNetwork:
    """Cardinalities are read off the row lengths of each node."""
    inputs, tables, weights = _parse_nodes(text, "depnet", "inputs")
    space, cpts = _build_cpts(inputs, tables)
    return DependencyNetwork(
        space=space,
        cpts=tuple(cpts),
        weights=SelectionWeights(weights) if weights is not None else None,
    )


def format_bayesnet(bn: BayesianNetwork) -> str:
    lines = [f"bayesnet {bn.n}"]
    for cpt in bn.cpts:
        lines.extend(_format_cpt(cpt, "parents"))
    return "\n".join(lines) + "\n"


def parse_bayesnet(text: str) -> BayesianNetwork:
    inputs, tables, weights = _parse_nodes(text, "bayesnet", "parents")
    if weights is not None:
        raise FormatError("bayesnet files carry no weights line")
    space, cpts = _build_cpts(inputs, tables)
    return BayesianNetwork(space=space, cpts=tuple(cpts))


# ========== Joint Table ==========

def format_joint(p: JointTable) -> str:
    lines = [f"joint {p.space.n} " + " ".join(str(c) for c in p.space.cards)]
    lines.extend(fmt_prob(v) for v in p.probs)
    return "\n".join(lines) + "\n"


def parse_joint(text: str) -> JointTable:
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise FormatError("missing 'joint' header") from None
    if header[0] != "joint" or len(header) < 3:
        raise FormatError("first line must be 'joint <n> <card…>'", number)
    n, *cards = _ints(header[1:], number)
    if len(cards) != n:
        raise FormatError(f"header announces {n} variables but lists {len(cards)} cardinalities", number)
    probs = []
    for number, tokens in lines:
        if len(tokens) != 1:
            raise FormatError("expected one probability per line", number)
        probs.extend(_floats(tokens, number))
    return JointTable(VarSpace(tuple(cards)), np.array(probs))
