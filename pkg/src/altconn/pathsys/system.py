from dataclasses import dataclass, field


@dataclass(frozen=True)
class PathSystem:
    """Internally disjoint alternating u-v paths, each with ``ell`` edges."""

    u: int
    v: int
    ell: int
    paths: list = field(default_factory=list)

    def __len__(self):
        return len(self.paths)

    @property
    def t(self):
        return len(self.paths)

    def internal_vertices(self):
        return {w for path in self.paths for w in path[1:-1]}


def verify_path_system(cg, ps):
    """Check every PathSystem invariant against ``cg``.

    Returns ``(True, None)`` or ``(False, reason)`` where reason names the
    first failed invariant: ``shape``, ``edge``, ``alternation``, ``repeat``,
    ``endpoint`` or ``disjointness``.
    """
    seen = set()
    for k, path in enumerate(ps.paths):
        path = [int(w) for w in path]
        if len(path) != ps.ell + 1 or path[0] != ps.u or path[-1] != ps.v:
            return False, f"shape: path {k} is not a u-v path with {ps.ell} edges"
        prev = -1
        for a, b in zip(path, path[1:]):
            c = cg.edge_color(a, b)
            if c < 0:
                return False, f"edge: path {k} uses non-edge {a}-{b}"
            if c == prev:
                return False, f"alternation: path {k} repeats color {c} at {a}"
            prev = c
        inner = path[1:-1]
        if len(set(inner)) != len(inner):
            return False, f"repeat: path {k} revisits a vertex"
        if ps.u in inner or ps.v in inner:
            return False, f"endpoint: path {k} passes through an endpoint"
        clash = seen.intersection(inner)
        if clash:
            return False, f"disjointness: path {k} reuses vertex {min(clash)}"
        seen.update(inner)
    return True, None
