"""The builder corpus shared by the pipeline and acceptance tests."""

from __future__ import annotations

from functools import lru_cache

from bredon.coeff import GModule, constant_system, fixed_point_system
from bredon.grp import cyclic_group
from bredon.gset import orbit_category
from bredon.homalg import AbHom, IntMatrix, cyclic
from bredon.sset import circle, interval, point, sphere2

GROUP_ORDERS = (1, 2, 3)


@lru_cache(maxsize=None)
def group(order: int):
    return cyclic_group(order)


def spaces(order: int) -> dict:
    g = group(order)
    out = {
        "point": point(g),
        "interval": interval(g),
        "circle1": circle(1, "trivial", g),
        "circle3": circle(3, "trivial", g),
        "sphere2": sphere2("trivial", g),
    }
    if order == 2:
        out.update(
            {
                "circle4-antipodal": circle(4, "antipodal", g),
                "circle8-antipodal": circle(8, "antipodal", g),
                "circle2-reflection": circle(2, "reflection", g),
                "circle4-reflection": circle(4, "reflection", g),
                "circle2-rotation": circle(2, "rotation", g),
                "sphere2-antipodal": sphere2("antipodal", g),
            }
        )
    if order == 3:
        out["circle3-rotation"] = circle(3, "rotation", g)
    return out


def sign_module(g) -> GModule:
    z = cyclic(0)
    acts = [AbHom(z, z, IntMatrix([[1 if a == g.identity else -1]])) for a in range(g.order)]
    return GModule(g, z, acts)


def coefficients(order: int) -> dict:
    g = group(order)
    cat = orbit_category(g)
    out = {
        "Zbar": constant_system(cyclic(0), cat),
        "Z/2": constant_system(cyclic(2), cat),
        "Mtr(Z)": fixed_point_system(GModule.trivial(g, cyclic(0)), cat),
    }
    if order == 2:
        out["Mtr(Zsign)"] = fixed_point_system(sign_module(g), cat)
    return out


def corpus():
    """``(order, space name, space, coefficient name, system)`` for every pair."""
    for order in GROUP_ORDERS:
        cs = coefficients(order)
        for sname, x in spaces(order).items():
            for cname, k in cs.items():
                yield order, sname, x, cname, k
