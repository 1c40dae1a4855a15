"""Named extremal and reference maps with their known norm values."""

import dataclasses
import re
from dataclasses import dataclass, field

from disknorm.errors import UnknownCatalogName
from disknorm.expr import ast
from disknorm.expr.parser import parse
from disknorm.maps.mappings import LogharmonicMap, logharmonic_map, power_construct

KOEBE = "z/(1-z)^2"


@dataclass(frozen=True)
class Expected:
    value: float
    relation: str = "eq"  # "eq": two-sided, "le": upper bound, "ge": lower bound
    provenance: str = ""


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    map: LogharmonicMap
    expected: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def normalized(self):
        return self.name.startswith(("thm31_ex1", "thm36_family", "identity"))


def _thm31_ex1():
    f = logharmonic_map("1/(1-z)", g="exp(-z)/(1-z)", omega="z", label="thm31_ex1")
    return CatalogEntry(
        "thm31_ex1",
        f,
        {
            "pre_schwarzian": Expected(5.0, provenance="(1-r^2)|P_f(r)| = r^2+2r+2 -> 5 as r -> 1"),
            "pre_schwarzian_psi": Expected(6.0, provenance="(1+r)(2+r) -> 6 as r -> 1"),
            "bloch_log_h": Expected(2.0, provenance="sup (1-r^2)/(1-r) = 1+r -> 2"),
            "psi_gap": Expected(1.0, provenance="6 - 5"),
        },
    )


def _thm31_ex2():
    f = logharmonic_map("z/(1-z)", g="1/(1-z)", omega="z", label="thm31_ex2")
    return CatalogEntry(
        "thm31_ex2",
        f,
        {
            "pre_schwarzian": Expected(5.0, provenance="(1-r^2)|P_f(r)| = 3+2r -> 5 as r -> 1"),
            "pre_schwarzian_psi": Expected(6.0, provenance="3(1+r) -> 6 as r -> 1"),
            "psi_gap": Expected(1.0, provenance="6 - 5"),
        },
    )


def thm36_family(t):
    """F = H conj(G), H = exp(-log(1-z)), dilatation (t-z)/(1-tz).

    Partial fractions give G'/G = -1/(1-z) + (1+t)/(1-tz), hence
    G = (1-z) (1-tz)^(-(1+t)/t).
    """
    from disknorm.theorems.formulas import n_t

    t = float(t)
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    tz = ast.mul(ast.const(t), ast.ZVAR)
    G = ast.mul(parse("1-z"), ast.rpow(ast.sub(ast.ONE, tz), -(1 + t) / t))
    omega = ast.div(ast.sub(ast.const(t), ast.ZVAR), ast.sub(ast.ONE, tz))
    name = f"thm36_family({t!r})"
    f = logharmonic_map("exp(-log(1-z))", g=G, omega=omega, label=name)
    return CatalogEntry(
        name,
        f,
        {
            "pre_schwarzian_h": Expected(4.0, provenance="P_H = 2/(1-z); 2(1+r) -> 4"),
            "bloch_log_g": Expected(2.0, provenance="(1+r)(r-t)/(1-tr) -> 2 as r -> 1"),
            "bloch_log_h": Expected(2.0, provenance="(1-r^2)/(1-r) -> 2"),
            "pre_schwarzian": Expected(7.0, "le", "||P_H|| + beta_log_G + 1"),
            "pre_schwarzian_lower": Expected(n_t(t), "ge", "real-axis maximum N_t"),
        },
        {"t": t},
    )


def koebe_power(lambda1, lambda2):
    lambda1, lambda2 = float(lambda1), float(lambda2)
    f = power_construct(KOEBE, KOEBE, lambda1, lambda2)
    name = f"koebe_power({lambda1!r},{lambda2!r})"
    f = dataclasses.replace(f, label=name)
    return CatalogEntry(
        name,
        f,
        {
            "log_derivative_h": Expected(6 * lambda1, provenance="f_z/f = lambda1 P_k, ||P_k|| = 6"),
            "omega": Expected(lambda2 / lambda1, provenance="H = G gives constant dilatation"),
        },
        {"lambda1": lambda1, "lambda2": lambda2},
    )


def _exp_h():
    f = logharmonic_map("exp(0.5*z)", g="exp(0.25*z)", omega="0.5", label="exp_h")
    return CatalogEntry(
        "exp_h",
        f,
        {
            "pre_schwarzian": Expected(0.75, provenance="P_f = 0.5 + 0.25 constant; sup at r = 0"),
            "hyperbolic": Expected(0.0, provenance="constant dilatation"),
            "bloch": Expected(0.75, provenance="(1-r^2)(0.5 + 0.25) at r = 0"),
        },
    )


def _identity():
    f = logharmonic_map("exp(z)", g="1", label="identity")
    return CatalogEntry(
        "identity",
        f,
        {
            "pre_schwarzian": Expected(1.0, provenance="P = 1; sup (1-r^2) = 1 at r = 0"),
            "bloch": Expected(1.0, provenance="|h'/h| = 1"),
        },
    )


_NAME = re.compile(r"^\s*(\w+)\s*(?:\(([^)]*)\))?\s*$")
_DEFAULTS = {"thm36_family": (0.5,), "koebe_power": (1.0, 0.5)}


def catalog(name):
    m = _NAME.match(name)
    if not m:
        raise UnknownCatalogName(name)
    base, arglist = m.group(1), m.group(2)
    try:
        args = tuple(float(a) for a in arglist.split(",")) if arglist else _DEFAULTS.get(base, ())
    except ValueError:
        raise UnknownCatalogName(name) from None
    builders = {
        "thm31_ex1": (_thm31_ex1, 0),
        "thm31_ex2": (_thm31_ex2, 0),
        "thm36_family": (thm36_family, 1),
        "koebe_power": (koebe_power, 2),
        "exp_h": (_exp_h, 0),
        "identity": (_identity, 0),
    }
    if base not in builders or len(args) != builders[base][1]:
        raise UnknownCatalogName(name)
    return builders[base][0](*args)


CATALOG_NAMES = ("thm31_ex1", "thm31_ex2", "thm36_family(t)", "koebe_power(l1,l2)", "exp_h", "identity")


def standard_entries():
    """One instance of every catalog family, as used by the property suites."""
    return [
        catalog("thm31_ex1"),
        catalog("thm31_ex2"),
        catalog("thm36_family(0.5)"),
        catalog("thm36_family(0.9)"),
        catalog("koebe_power(1,0.5)"),
        catalog("exp_h"),
        catalog("identity"),
    ]
