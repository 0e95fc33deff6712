"""Interaction-graph utilities shared by the Hamiltonian builder and the
circuit samplers."""

from __future__ import annotations


class ArchitectureError(ValueError):
    """Raised when an interaction graph fails a structural requirement."""


def chain_edges(n: int) -> list[tuple[int, int]]:
    """Edges of the 1D open chain on n sites."""
    return [(i, i + 1) for i in range(n - 1)]


def normalize_edges(n: int, edges) -> list[tuple[int, int]]:
    """Validate, deduplicate and sort an undirected edge list on n sites."""
    seen = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if not (0 <= i < n and 0 <= j < n):
            raise ArchitectureError(f"edge {e} references a site outside 0..{n - 1}")
        if i == j:
            raise ArchitectureError(f"self-loop at site {i} is not allowed")
        seen.add((min(i, j), max(i, j)))
    return sorted(seen)


def hamiltonian_path_exists(n: int, edges) -> bool:
    """Decide whether the graph admits a Hamiltonian path.

    Bitmask dynamic programming over vertex subsets; fine for desk-scale n.
    """
    if n == 1:
        return True
    if not edges:
        return False
    adj = [0] * n
    for i, j in edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    # reach[mask] = bitmask of vertices at which a path visiting exactly
    # `mask` can end
    reach = [0] * (1 << n)
    for v in range(n):
        reach[1 << v] = 1 << v
    full = (1 << n) - 1
    for mask in range(1 << n):
        ends = reach[mask]
        if not ends:
            continue
        if mask == full:
            return True
        for v in range(n):
            if ends >> v & 1:
                nxt = adj[v] & ~mask
                while nxt:
                    w = (nxt & -nxt).bit_length() - 1
                    reach[mask | 1 << w] |= 1 << w
                    nxt &= nxt - 1
    return bool(reach[full])
