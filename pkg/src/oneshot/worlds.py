"""Canonical fixture texts: the two benchmark vocabularies, the standard
constraint library, and the bundled L-shape example with its target
definition.  The files under domains/ are copies of these constants; a
test keeps them in sync.
"""

from __future__ import annotations

from .domain import ConstraintLibrary, Domain
from .parsing import parse_constraints, parse_domain, parse_example, parse_theory

BLOCKS_DOMAIN = """\
# block constructions: towers stack, rows extend sideways
keep-constant: NWTop, NETop, CTop, ETop, WTop, NTop, E

mode: Contains(+obj, -obj)
mode: Row(+obj)
mode: Tower(+obj)
mode: Width(+obj, -int)
mode: Height(+obj, -int)
mode: SpRel(+obj, +obj, #dir)
mode: Base(+obj, -int)
mode: Span(+obj, -int)
mode: Rise(+obj, -int)
mode: Run(+obj, -int)
mode: Reach(+obj, -int)
mode: Drop(+obj, -int)
mode: Gap(+obj, -int)
mode: Layers(+obj, -int)

bounds: i=3 j=3 maxbody=20

expand: Tower(B) where Height(B,H) -> stack(B, 0, k) for k in 0..H-1
expand: Row(A) where Width(A,W) -> extend(A, k, 0) for k in 0..W-1
expand: Contains(S,C) -> adopt(S, C)
expand: SpRel(B,A,D) -> align(B, A, D)
"""

ASSEMBLY_DOMAIN = """\
# machine assemblies: frames are welded up, drums are turned down
keep-constant: Front, Rear, Top, Side

mode: Contains(+obj, -obj)
mode: Frame(+obj)
mode: Drum(+obj)
mode: Length(+obj, -int)
mode: Radius(+obj, -int)
mode: Mounted(+obj, +obj, #port)
mode: Wheelbase(+obj, -int)
mode: Clearance(+obj, -int)
mode: Boom(+obj, -int)
mode: Lift(+obj, -int)
mode: Gauge(+obj, -int)
mode: Tension(+obj, -int)
mode: Span(+obj, -int)
mode: Pitch(+obj, -int)

bounds: i=3 j=3 maxbody=20

expand: Frame(F) where Length(F,L) -> weld(F, 0, k) for k in 0..L-1
expand: Drum(D) where Radius(D,R) -> turn(D, k, 0) for k in 0..R-1
expand: Contains(S,C) -> adopt(S, C)
expand: Mounted(B,A,P) -> fasten(B, A, P)
"""

STD_CONSTRAINTS = """\
constraint: Sub(x:int, y:int, n:int) means y - x = n
constraint: Equal(x:int, y:int) means x = y
constraint: Greater(x:int, y:int) means y > x
constraint: Geq(x:int, y:int) means y >= x
"""

L_SHAPE_FACTS = """\
# an L: a four-wide row with a four-high tower on its northwest end
@concept L(s1).
@params s1: base=4, height=5.
Row(a).
Tower(b).
Width(a, 4).
Height(b, 4).
Base(s1, 4).
Height(s1, 5).
Contains(s1, a).
Contains(s1, b).
SpRel(b, a, "NWTop").
"""

L_TRUTH_THY = """\
L(S) :- Contains(S,A), Contains(S,B), Row(A), Tower(B), Width(A,Wa), Base(S,Ws), Equal(Ws,Wa), Height(S,Hs), Height(B,Hb), Sub(Hb,Hs,1), SpRel(B,A,"NWTop").
L(S) :- Contains(S,A), Contains(S,B), Row(A), Tower(B), Width(A,Wa), Base(S,Ws), Equal(Ws,Wa), Height(S,Hs), Height(B,Hb), Sub(Hb,Hs,1), SpRel(B,A,"NETop").
"""

ASSEMBLY_DEMO_FACTS = """\
# a small cart assembly, with the build order recorded
@concept Cart(c1).
@params c1: wheelbase=6, clearance=3.
Frame(f).
Drum(w).
Length(f, 6).
Radius(w, 2).
Wheelbase(c1, 6).
Clearance(c1, 3).
Contains(c1, f).
Contains(c1, w).
Mounted(w, f, "Front").
@time 0: Fetch(c1, f).
@time 1: Fetch(c1, w).
@time 2: Join(w, f).
"""


def blocks_domain() -> Domain:
    return parse_domain(BLOCKS_DOMAIN, source="blocks.dom")


def assembly_domain() -> Domain:
    return parse_domain(ASSEMBLY_DOMAIN, source="assembly.dom")


def std_constraints() -> ConstraintLibrary:
    return parse_constraints(STD_CONSTRAINTS, source="std.constraints")


def l_shape_example():
    return parse_example(L_SHAPE_FACTS, source="l_shape.facts")


def l_truth():
    return parse_theory(L_TRUTH_THY, source="l_truth.thy")
