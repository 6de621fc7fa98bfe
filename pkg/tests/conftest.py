"""Shared fixtures: cached towers, constructed sets and spectra.

Construction is deterministic, so everything can be memoized for the whole
session; the acceptance module reuses these caches heavily.
"""

from __future__ import annotations

import pytest

from denpds import verify as vf
from denpds.construct import Tower, TowerParams

# towers used by the certification grid: (p, s, m, ell)
GRID_G1 = [
    (2, 1, 2, 1),
    (2, 1, 3, 1),
    (2, 1, 2, 2),
    (3, 1, 2, 1),
    (2, 2, 2, 1),
]


class GridCache:
    def __init__(self):
        self._towers: dict = {}
        self._sets: dict = {}
        self._indexers: dict = {}
        self._spectra: dict = {}
        self._profiles: dict = {}

    def tower(self, p, s, m, ell, r) -> Tower:
        key = (p, s, m, ell, r)
        if key not in self._towers:
            self._towers[key] = Tower(TowerParams(p, s, m, ell, r))
        return self._towers[key]

    def indexer(self, tower: Tower) -> vf.GroupIndexer:
        key = tower.params
        if key not in self._indexers:
            self._indexers[key] = vf.GroupIndexer(tower)
        return self._indexers[key]

    def pds(self, p, s, m, ell, r, family="primal"):
        key = (p, s, m, ell, r, family)
        if key not in self._sets:
            tower = self.tower(p, s, m, ell, r)
            R = tower.default_subspace()
            build = tower.build_D if family == "primal" else tower.build_D_dual
            self._sets[key] = (build(R), R)
        return self._sets[key]

    def spectrum(self, pds, tower):
        key = (tower.params, pds.provenance)
        if key not in self._spectra:
            self._spectra[key] = vf.character_spectrum(pds, self.indexer(tower))
        return self._spectra[key]

    def profile(self, pds, tower):
        key = (tower.params, pds.provenance)
        if key not in self._profiles:
            self._profiles[key] = vf.difference_profile(pds, self.indexer(tower))
        return self._profiles[key]

    def instances(self):
        """Every (tower, R, family) of the certification grid."""
        for p, s, m, ell in GRID_G1:
            for r in range(m + 1):
                for family in ("primal", "dual"):
                    tower = self.tower(p, s, m, ell, r)
                    pds, R = self.pds(p, s, m, ell, r, family)
                    yield tower, pds, R, family


@pytest.fixture(scope="session")
def grid() -> GridCache:
    return GridCache()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" or "test_acceptance" not in rep.nodeid:
                continue
            name = rep.nodeid.split("::")[-1]
            if name.startswith("test_criterion_"):
                rows.append((name[len("test_criterion_") :], outcome))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for label, outcome in sorted(rows):
            pretty = label.replace("_", " ")
            terminalreporter.write_line(
                "CRITERION %s: %s" % (pretty, "PASS" if outcome == "passed" else "FAIL")
            )
