from __future__ import annotations

import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nelson_s.formula import BOT, TOP, Binary, Conn, Lang, Neg, Var

settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

_CONNS = {
    Lang.S: (Conn.AND, Conn.OR, Conn.IMP),
    Lang.S_PRIME: (Conn.AND, Conn.OR, Conn.IMP, Conn.FUSE),
    Lang.N4: (Conn.AND, Conn.OR, Conn.WIMP),
    Lang.ANY: tuple(Conn),
}


def formulas(lang: Lang = Lang.S, names=("p", "q", "r"), max_leaves: int = 12):
    leaves = [st.sampled_from([Var(n) for n in names])]
    if lang is not Lang.N4:
        leaves.append(st.just(BOT))
    if lang in (Lang.S_PRIME, Lang.ANY):
        leaves.append(st.just(TOP))
    conns = _CONNS[lang]

    def extend(children):
        return st.one_of(
            children.map(Neg),
            st.builds(Binary, st.sampled_from(conns), children, children),
        )

    return st.recursive(st.one_of(*leaves), extend, max_leaves=max_leaves)
