"""Packaged worlds and the on-disk copies under domains/.

The domains/ files are byte copies of the embedded constants so the CLI
examples and the library agree; the sync test keeps them honest.
"""

from __future__ import annotations

from pathlib import Path

import pytest

import oneshot.worlds as worlds

ROOT = Path(__file__).resolve().parent.parent


@pytest.mark.parametrize(
    "fname,constant",
    [
        ("l_shape.facts", worlds.L_SHAPE_FACTS),
        ("blocks.dom", worlds.BLOCKS_DOMAIN),
        ("assembly.dom", worlds.ASSEMBLY_DOMAIN),
        ("std.constraints", worlds.STD_CONSTRAINTS),
        ("l_truth.thy", worlds.L_TRUTH_THY),
        ("assembly_demo.facts", worlds.ASSEMBLY_DEMO_FACTS),
    ],
)
def test_domain_files_match_embedded_constants(fname, constant):
    on_disk = (ROOT / "domains" / fname).read_text()
    assert on_disk == constant


def test_blocks_domain_shape(blocks):
    assert {"Contains", "Row", "Tower", "Width", "Height", "SpRel"} <= set(
        blocks.modes
    )
    assert {"NWTop", "NETop", "CTop", "ETop", "WTop", "NTop", "E"} <= set(
        blocks.keep_constants
    )
    assert {r.pred for r in blocks.rules} == {"Tower", "Row", "Contains", "SpRel"}


def test_assembly_domain_shape(assembly):
    assert {"Frame", "Drum", "Mounted", "Length", "Radius"} <= set(assembly.modes)
    assert {"Front", "Rear", "Top", "Side"} <= set(assembly.keep_constants)
    assert {r.pred for r in assembly.rules} == {"Frame", "Drum", "Contains", "Mounted"}


def test_std_constraints_cover_all_builtins(lib):
    assert {t.pred for t in lib.templates} == {"Sub", "Equal", "Greater", "Geq"}


def test_lshape_example_shape(lshape):
    assert lshape.head.render() == "L(s1)"
    assert lshape.param_map == {"base": 4, "height": 5}
    assert len(lshape.facts) == 9


def test_truth_is_two_disjuncts_and_covers(lshape, truth):
    from oneshot.coverage import covers

    assert len(truth.clauses) == 2
    assert covers(truth, lshape).covered


def test_loaders_cache_nothing_mutable(blocks):
    # parsing again must give an equal, independent domain
    again = worlds.blocks_domain()
    assert again.modes.keys() == blocks.modes.keys()
    assert again is not blocks or again.modes is not None
