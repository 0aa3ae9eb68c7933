"""A small CDCL satisfiability solver.

Clause learning with first-unique-implication-point conflicts, watched
literals, and non-chronological backjumping, but deliberately no restarts
and no dynamic variable ordering: decisions always pick the lowest-numbered
unassigned variable and try false first. With that policy the first model
found is the lexicographically least satisfying assignment over the
variable order, which the satisfiability engine relies on to make witness
enumeration deterministic.
"""

from __future__ import annotations

from typing import Dict, List, Optional


class Solver:
    def __init__(self):
        self.nvars = 0
        self.clauses: List[List[int]] = []
        self.watches: Dict[int, List[int]] = {}
        self.assign: List[Optional[bool]] = [None]  # 1-based
        self.level: List[int] = [0]
        self.reason: List[int] = [-1]
        self.trail: List[int] = []
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.ok = True

    def new_var(self) -> int:
        self.nvars += 1
        self.assign.append(None)
        self.level.append(0)
        self.reason.append(-1)
        return self.nvars

    def value(self, lit: int) -> Optional[bool]:
        v = self.assign[abs(lit)]
        if v is None:
            return None
        return v if lit > 0 else not v

    @property
    def decision_level(self) -> int:
        return len(self.trail_lim)

    def add_clause(self, lits) -> bool:
        """Add a clause; returns False if the instance is already
        unsatisfiable. Must be called before solve()."""
        if not self.ok:
            return False
        out = []
        seen = set()
        for lit in lits:
            if lit in seen:
                continue
            if -lit in seen:
                return True  # tautology
            v = self.value(lit)
            if v is True and self.level[abs(lit)] == 0:
                return True
            if v is False and self.level[abs(lit)] == 0:
                continue
            seen.add(lit)
            out.append(lit)
        if not out:
            self.ok = False
            return False
        if len(out) == 1:
            if not self._enqueue(out[0], -1):
                self.ok = False
                return False
            if self._propagate() is not None:
                self.ok = False
                return False
            return True
        ci = len(self.clauses)
        self.clauses.append(out)
        self.watches.setdefault(out[0], []).append(ci)
        self.watches.setdefault(out[1], []).append(ci)
        return True

    def _enqueue(self, lit: int, reason: int) -> bool:
        v = self.value(lit)
        if v is not None:
            return v
        var = abs(lit)
        self.assign[var] = lit > 0
        self.level[var] = self.decision_level
        self.reason[var] = reason
        self.trail.append(lit)
        return True

    def _propagate(self) -> Optional[int]:
        """Unit propagation; returns a conflicting clause index or None."""
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            falsified = -p
            ws = self.watches.get(falsified, [])
            new_ws = []
            i = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                cl = self.clauses[ci]
                if cl[0] == falsified:
                    cl[0], cl[1] = cl[1], cl[0]
                # now cl[1] == falsified
                first = cl[0]
                if self.value(first) is True:
                    new_ws.append(ci)
                    continue
                moved = False
                for k in range(2, len(cl)):
                    if self.value(cl[k]) is not False:
                        cl[1], cl[k] = cl[k], cl[1]
                        self.watches.setdefault(cl[1], []).append(ci)
                        moved = True
                        break
                if moved:
                    continue
                new_ws.append(ci)
                if self.value(first) is False:
                    # conflict: keep remaining watches before reporting
                    new_ws.extend(ws[i:])
                    self.watches[falsified] = new_ws
                    self.qhead = len(self.trail)
                    return ci
                self._enqueue(first, ci)
            self.watches[falsified] = new_ws
        return None

    def _analyze(self, confl: int):
        """First-UIP conflict analysis; returns (learnt, backjump level)
        with the asserting literal first."""
        learnt = [0]
        seen = [False] * (self.nvars + 1)
        counter = 0
        p = 0  # implied literal whose reason is being expanded
        idx = len(self.trail) - 1
        cur_level = self.decision_level
        cl = self.clauses[confl]
        while True:
            for q in cl:
                if q == p:
                    continue
                v = abs(q)
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    if self.level[v] == cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            p = self.trail[idx]
            v = abs(p)
            seen[v] = False
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            cl = self.clauses[self.reason[v]]
        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        back = max(self.level[abs(q)] for q in learnt[1:])
        # put a literal of the backjump level in the second watch slot
        for k in range(1, len(learnt)):
            if self.level[abs(learnt[k])] == back:
                learnt[1], learnt[k] = learnt[k], learnt[1]
                break
        return learnt, back

    def _cancel_until(self, lvl: int):
        while self.decision_level > lvl:
            bound = self.trail_lim.pop()
            while len(self.trail) > bound:
                lit = self.trail.pop()
                self.assign[abs(lit)] = None
        self.qhead = len(self.trail)

    def _next_decision(self) -> int:
        for v in range(1, self.nvars + 1):
            if self.assign[v] is None:
                return v
        return 0

    def solve(self) -> bool:
        if not self.ok:
            return False
        if self._propagate() is not None:
            self.ok = False
            return False
        while True:
            confl = self._propagate()
            if confl is not None:
                if self.decision_level == 0:
                    self.ok = False
                    return False
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    ci = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches.setdefault(learnt[0], []).append(ci)
                    self.watches.setdefault(learnt[1], []).append(ci)
                    self._enqueue(learnt[0], ci)
            else:
                v = self._next_decision()
                if v == 0:
                    return True
                self.trail_lim.append(len(self.trail))
                self._enqueue(-v, -1)  # try false first

    def model_value(self, var: int) -> bool:
        v = self.assign[var]
        if v is None:
            raise RuntimeError("no model available")
        return v
