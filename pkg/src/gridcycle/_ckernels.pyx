# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled union-find kernels over row-major symbol strings."""
from libc.stdlib cimport malloc, free

DEF STACK_CELLS = 256


cdef inline int _find(int* parent, int x) noexcept nogil:
    cdef int root = x
    cdef int nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef inline bint _union(int* parent, int* size, int a, int b) noexcept nogil:
    # returns True when a and b were already connected
    cdef int ra = _find(parent, a)
    cdef int rb = _find(parent, b)
    if ra == rb:
        return True
    if size[ra] > size[rb] or (size[ra] == size[rb] and ra < rb):
        parent[rb] = ra
        size[ra] += size[rb]
    else:
        parent[ra] = rb
        size[rb] += size[ra]
    return False


def has_cycle_flat(str cells, int rows, int cols):
    cdef int n = rows * cols
    cdef int stack_parent[STACK_CELLS]
    cdef int stack_size[STACK_CELLS]
    cdef int* parent = stack_parent
    cdef int* size = stack_size
    cdef int i, c
    cdef Py_UCS4 sym
    cdef bint found = False
    if len(cells) != n:
        raise ValueError("cell string length does not match dimensions")
    if n > STACK_CELLS:
        parent = <int*> malloc(n * sizeof(int))
        size = <int*> malloc(n * sizeof(int))
        if parent == NULL or size == NULL:
            free(parent)
            free(size)
            raise MemoryError()
    try:
        for i in range(n):
            parent[i] = i
            size[i] = 1
        for i in range(n):
            sym = cells[i]
            c = i % cols
            if c + 1 < cols and cells[i + 1] == sym:
                if _union(parent, size, i, i + 1):
                    found = True
                    break
            if i + cols < n and cells[i + cols] == sym:
                if _union(parent, size, i, i + cols):
                    found = True
                    break
    finally:
        if n > STACK_CELLS:
            free(parent)
            free(size)
    return found


def count_edges_flat(str cells, int rows, int cols):
    cdef int n = rows * cols
    cdef int i
    cdef int total = 0
    if len(cells) != n:
        raise ValueError("cell string length does not match dimensions")
    for i in range(n):
        if (i % cols) + 1 < cols and cells[i + 1] == cells[i]:
            total += 1
        if i + cols < n and cells[i + cols] == cells[i]:
            total += 1
    return total
