"""Pure-Python reference kernels; used when the compiled extension is unavailable."""


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def has_cycle_flat(cells: str, rows: int, cols: int) -> bool:
    """Union-find cycle test over a row-major string of single-character symbols."""
    n = rows * cols
    parent = list(range(n))
    size = [1] * n
    for i in range(n):
        sym = cells[i]
        # right edge before down edge
        right = i + 1 if (i % cols) + 1 < cols and cells[i + 1] == sym else -1
        down = i + cols if i + cols < n and cells[i + cols] == sym else -1
        for k in (right, down):
            if k < 0:
                continue
            ri = _find(parent, i)
            rk = _find(parent, k)
            if ri == rk:
                return True
            if size[ri] > size[rk] or (size[ri] == size[rk] and ri < rk):
                parent[rk] = ri
                size[ri] += size[rk]
            else:
                parent[ri] = rk
                size[rk] += size[ri]
    return False


def count_edges_flat(cells: str, rows: int, cols: int) -> int:
    n = rows * cols
    total = 0
    for i in range(n):
        if (i % cols) + 1 < cols and cells[i + 1] == cells[i]:
            total += 1
        if i + cols < n and cells[i + cols] == cells[i]:
            total += 1
    return total
