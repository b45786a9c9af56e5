"""Shared context for one algebra: registry, Hom caches, mutation cache."""

from __future__ import annotations

import threading

from .complexes import PerfectComplex, direct_sum, projective_stalk, zero_complex
from .decomposition import Registry
from .hom import HomSpace, hom_space, hom_window
from .quiver import AlgebraTable, QuiverPresentation, build_algebra


class Workspace:
    def __init__(self, alg: AlgebraTable):
        self.alg = alg
        self.registry = Registry(alg)
        self._hom_cache = {}
        self._mutation_cache = {}
        self._lock = threading.RLock()
        self.projective_ids = tuple(
            self.registry.register(projective_stalk(alg, v), assume_minimal=True)
            for v in range(alg.n_simples)
        )

    @classmethod
    def from_presentation(cls, pres: QuiverPresentation) -> "Workspace":
        return cls(build_algebra(pres))

    # -- hom caching on registry ids ---------------------------------------
    def hom(self, src_id: int, tgt_id: int, shift: int) -> HomSpace:
        key = (src_id, tgt_id, shift)
        with self._lock:
            hit = self._hom_cache.get(key)
        if hit is not None:
            return hit
        hs = hom_space(self.registry.complex(src_id), self.registry.complex(tgt_id), shift)
        with self._lock:
            self._hom_cache[key] = hs
        return hs

    def hom_dim(self, src_id: int, tgt_id: int, shift: int) -> int:
        lo, hi = hom_window(self.registry.complex(src_id), self.registry.complex(tgt_id))
        if shift < lo or shift > hi:
            return 0
        return self.hom(src_id, tgt_id, shift).dim

    # -- objects -------------------------------------------------------------
    def sum_complex(self, ids) -> PerfectComplex:
        if not ids:
            return zero_complex(self.alg)
        return direct_sum([self.registry.complex(i) for i in ids])

    def labels(self, ids) -> str:
        return "+".join(self.registry.label(i) for i in ids) if ids else "0"

    def mutation_cache_get(self, key):
        with self._lock:
            return self._mutation_cache.get(key)

    def mutation_cache_put(self, key, value):
        with self._lock:
            self._mutation_cache[key] = value
