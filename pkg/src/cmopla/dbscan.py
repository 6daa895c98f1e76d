"""Grid-accelerated density clustering with exact epsilon neighborhoods."""

from __future__ import annotations

import itertools

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .estimator import BaseEstimator
from .validation import check_array_2d, check_positive_float, check_positive_int

_ROW_CHUNK = 256
_COL_CHUNK = 8192


def _within(P: np.ndarray, Q: np.ndarray, eps2: float) -> np.ndarray:
    """Boolean inclusion matrix on squared distance, chunked to bound memory.

    Distances use the direct (a-b)**2 form so boundary pairs at exactly eps
    compare identically to a naive implementation.
    """
    out = np.empty((P.shape[0], Q.shape[0]), dtype=bool)
    for i in range(0, P.shape[0], _ROW_CHUNK):
        pi = P[i : i + _ROW_CHUNK]
        for j in range(0, Q.shape[0], _COL_CHUNK):
            qj = Q[j : j + _COL_CHUNK]
            d2 = ((pi[:, None, :] - qj[None, :, :]) ** 2).sum(axis=2)
            out[i : i + pi.shape[0], j : j + qj.shape[0]] = d2 <= eps2
    return out


class _GridIndex:
    """Uniform bucket grid with cell width eps.

    Candidates for an epsilon ball around any point lie in the 3**dim cells
    adjacent to its own, so scanning those cells is exact, not approximate.
    """

    def __init__(self, X: np.ndarray, eps: float) -> None:
        self.X = X
        self.eps = float(eps)
        n, dim = X.shape
        mins = X.min(axis=0)
        cells = np.floor((X - mins) / eps).astype(np.int64)
        extents = cells.max(axis=0) + 1
        span = 1.0
        for e in extents:
            span *= float(e)
        if span >= 2.0**62:
            raise ValueError(
                "eps is too small relative to the data spread for grid indexing"
            )
        strides = np.ones(dim, dtype=np.int64)
        for j in range(dim - 2, -1, -1):
            strides[j] = strides[j + 1] * extents[j + 1]
        keys = cells @ strides
        self.order = np.argsort(keys, kind="stable")
        sorted_keys = keys[self.order]
        self.unique_keys, starts = np.unique(sorted_keys, return_index=True)
        self.starts = np.append(starts, n)
        self.cells = cells
        self.extents = extents
        self.strides = strides
        self.offsets = np.array(
            list(itertools.product((-1, 0, 1), repeat=dim)), dtype=np.int64
        )

    @property
    def n_cells(self) -> int:
        return len(self.unique_keys)

    def bucket(self, pos: int) -> np.ndarray:
        """Point indices in the pos-th occupied cell."""
        return self.order[self.starts[pos] : self.starts[pos + 1]]

    def cell_coords(self, pos: int) -> np.ndarray:
        return self.cells[self.order[self.starts[pos]]]

    def neighborhood(self, coords: np.ndarray) -> np.ndarray:
        """Point indices in the 3**dim cells around the given cell."""
        nb = coords[None, :] + self.offsets
        valid = np.all((nb >= 0) & (nb < self.extents[None, :]), axis=1)
        keys = nb[valid] @ self.strides
        pos = np.searchsorted(self.unique_keys, keys)
        pos = pos[
            (pos < len(self.unique_keys)) & (self.unique_keys[np.minimum(pos, len(self.unique_keys) - 1)] == keys)
        ]
        if len(pos) == 0:
            return np.empty(0, dtype=np.int64)
        return np.concatenate([self.bucket(p) for p in np.sort(pos)])


def neighbor_query(X: np.ndarray, index: int, eps: float) -> np.ndarray:
    """All point indices within eps of X[index], inclusive of the point itself.

    The boundary is closed: a point at distance exactly eps is a neighbor.
    """
    X = check_array_2d(X, name="X")
    eps = check_positive_float(eps, name="eps")
    if not 0 <= index < len(X):
        raise ValueError(f"index {index} out of range for {len(X)} points")
    grid = _GridIndex(X, eps)
    cand = grid.neighborhood(grid.cells[index])
    hit = _within(X[index : index + 1], X[cand], eps * eps)[0]
    return np.sort(cand[hit])


class DBSCAN(BaseEstimator):
    """Density-based clustering over points in a (typically unit) box.

    Parameters
    ----------
    eps:
        Neighborhood radius; the epsilon ball is closed.
    min_samples:
        Neighbor count (including the point itself) required for a core point.

    Attributes set by :meth:`fit`
    -----------------------------
    labels_:
        Cluster id per point, -1 for noise. Cluster ids are numbered by the
        ascending index of each cluster's first core point, and a border
        point reachable from several clusters takes the lowest such id,
        matching a sequential scan in ascending point order.
    is_core_:
        Boolean core-point mask.
    n_clusters_:
        Number of clusters found.

    Points are used as given; callers working on non-unit boxes are expected
    to min-max scale coordinates beforehand so eps is comparable across
    problems.
    """

    def __init__(self, eps: float = 0.02, min_samples: int = 5) -> None:
        self.eps = eps
        self.min_samples = min_samples

    def fit(self, X: np.ndarray) -> "DBSCAN":
        eps = check_positive_float(self.eps, name="eps")
        min_samples = check_positive_int(self.min_samples, name="min_samples")
        X = np.asarray(X, dtype=float)
        n = X.shape[0]
        if n == 0:
            self.labels_ = np.empty(0, dtype=np.int64)
            self.is_core_ = np.empty(0, dtype=bool)
            self.n_clusters_ = 0
            return self
        X = check_array_2d(X, name="X")

        grid = _GridIndex(X, eps)
        eps2 = eps * eps

        counts = np.zeros(n, dtype=np.int64)
        for pos in range(grid.n_cells):
            a = grid.bucket(pos)
            b = grid.neighborhood(grid.cell_coords(pos))
            counts[a] = _within(X[a], X[b], eps2).sum(axis=1)
        core = counts >= min_samples
        self.is_core_ = core

        # local groups: connected components of core points within one cell
        point_group = np.full(n, -1, dtype=np.int64)
        n_groups = 0
        for pos in range(grid.n_cells):
            a = grid.bucket(pos)
            ac = a[core[a]]
            if len(ac) == 0:
                continue
            if len(ac) == 1:
                point_group[ac] = n_groups
                n_groups += 1
                continue
            adj = _within(X[ac], X[ac], eps2)
            k, local = connected_components(coo_matrix(adj), directed=False)
            point_group[ac] = n_groups + local
            n_groups += k

        if n_groups == 0:
            self.labels_ = np.full(n, -1, dtype=np.int64)
            self.n_clusters_ = 0
            return self

        # cross-cell group edges plus core adjacency of non-core points
        edge_src: list[np.ndarray] = []
        edge_dst: list[np.ndarray] = []
        cand_pts: list[np.ndarray] = []
        cand_grp: list[np.ndarray] = []
        for pos in range(grid.n_cells):
            a = grid.bucket(pos)
            b = grid.neighborhood(grid.cell_coords(pos))
            bc = b[core[b]]
            if len(bc) == 0:
                continue
            w = _within(X[a], X[bc], eps2)
            a_core_mask = core[a]
            ac = a[a_core_mask]
            if len(ac):
                bc_groups = point_group[bc]
                w_core = w[a_core_mask]
                for g in np.unique(point_group[ac]):
                    rows = point_group[ac] == g
                    cols = w_core[rows].any(axis=0)
                    targets = np.unique(bc_groups[cols])
                    edge_src.append(np.full(len(targets), g, dtype=np.int64))
                    edge_dst.append(targets)
            an = a[~a_core_mask]
            if len(an):
                ii, jj = np.nonzero(w[~a_core_mask])
                cand_pts.append(an[ii])
                cand_grp.append(point_group[bc][jj])

        src = np.concatenate(edge_src) if edge_src else np.empty(0, np.int64)
        dst = np.concatenate(edge_dst) if edge_dst else np.empty(0, np.int64)
        graph = coo_matrix(
            (np.ones(len(src), dtype=np.int8), (src, dst)),
            shape=(n_groups, n_groups),
        )
        n_comp, comp = connected_components(graph, directed=False)

        # number clusters by ascending index of their first core point
        core_idx = np.flatnonzero(core)
        core_comp = comp[point_group[core_idx]]
        _, first = np.unique(core_comp, return_index=True)
        rank = np.empty(n_comp, dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(n_comp)

        labels = np.full(n, -1, dtype=np.int64)
        labels[core_idx] = rank[core_comp]
        if cand_pts:
            pts = np.concatenate(cand_pts)
            grp = np.concatenate(cand_grp)
            best = np.full(n, n_comp, dtype=np.int64)
            np.minimum.at(best, pts, rank[comp[grp]])
            claimed = (~core) & (best < n_comp)
            labels[claimed] = best[claimed]

        self.labels_ = labels
        self.n_clusters_ = n_comp
        return self
