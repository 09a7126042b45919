"""Plain-text interchange formats.

* graph: ``n m`` then ``m`` lines ``u v`` (u < v, sorted); a colored graph
  carries a third column ``c``.
* path system: ``u v ell t`` then ``t`` lines of ``ell + 1`` vertices.
* codebook: ``m n r`` then ``n`` lines of ``m`` symbols.
"""

from contextlib import contextmanager
from pathlib import Path

from .errors import ParameterError
from .graph_core import ColoredGraph, Graph
from .oracle import CodeBook
from .pathsys.system import PathSystem


@contextmanager
def _opened(target, mode):
    if isinstance(target, (str, Path)):
        with open(target, mode, encoding="utf-8", newline="\n") as fh:
            yield fh
    else:
        yield target


def _ints(line, lineno, count=None):
    try:
        vals = [int(x) for x in line.split()]
    except ValueError:
        raise ParameterError(f"line {lineno}: expected integers, got {line.strip()!r}") from None
    if count is not None and len(vals) not in count:
        raise ParameterError(f"line {lineno}: expected {'/'.join(map(str, count))} fields")
    return vals


def _lines(fh):
    return [ln for ln in fh.read().splitlines() if ln.strip() and not ln.startswith("#")]


def write_graph(g, target):
    """Write a Graph or ColoredGraph."""
    if isinstance(g, ColoredGraph):
        graph, colors = g.graph, g.colors.tolist()
    else:
        graph, colors = g, None
    with _opened(target, "w") as fh:
        fh.write(f"{graph.n} {graph.m}\n")
        for i, (u, v) in enumerate(graph.edges()):
            fh.write(f"{u} {v} {colors[i]}\n" if colors is not None else f"{u} {v}\n")


def read_graph(source, r=None):
    """Read a graph file; three-column files give a ColoredGraph.

    The color count defaults to ``max(2, largest color + 1)``.
    """
    with _opened(source, "r") as fh:
        lines = _lines(fh)
    if not lines:
        raise ParameterError("empty graph file")
    n, m = _ints(lines[0], 1, (2,))
    body = lines[1:]
    if len(body) != m:
        raise ParameterError(f"header announces {m} edges, found {len(body)}")
    rows = [_ints(ln, i + 2, (2, 3)) for i, ln in enumerate(body)]
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise ParameterError("mixed colored and uncolored edge lines")
    g = Graph.from_edges(n, [row[:2] for row in rows])
    if widths != {3}:
        return g
    colored = {(min(a, b), max(a, b)): c for a, b, c in rows}
    colors = [colored[e] for e in g.edges()]
    if r is None:
        r = max(2, max(colors, default=0) + 1)
    return ColoredGraph(g, r, colors)


def write_path_system(ps, target):
    with _opened(target, "w") as fh:
        fh.write(f"{ps.u} {ps.v} {ps.ell} {ps.t}\n")
        for path in ps.paths:
            fh.write(" ".join(map(str, path)) + "\n")


def read_path_system(source):
    with _opened(source, "r") as fh:
        lines = _lines(fh)
    if not lines:
        raise ParameterError("empty path-system file")
    u, v, ell, t = _ints(lines[0], 1, (4,))
    if len(lines) - 1 != t:
        raise ParameterError(f"header announces {t} paths, found {len(lines) - 1}")
    paths = [tuple(_ints(ln, i + 2)) for i, ln in enumerate(lines[1:])]
    return PathSystem(u, v, ell, paths)


def write_codebook(cb, target):
    with _opened(target, "w") as fh:
        fh.write(f"{cb.m} {cb.n} {cb.r}\n")
        for word in cb.words:
            fh.write(" ".join(map(str, word)) + "\n")


def read_codebook(source):
    with _opened(source, "r") as fh:
        lines = _lines(fh)
    if not lines:
        raise ParameterError("empty codebook file")
    m, n, r = _ints(lines[0], 1, (3,))
    if len(lines) - 1 != n:
        raise ParameterError(f"header announces {n} words, found {len(lines) - 1}")
    return CodeBook(m, r, tuple(tuple(_ints(ln, i + 2, (m,))) for i, ln in enumerate(lines[1:])))
