from dataclasses import dataclass

import pytest

from whk.actions import ModuleAction, ht_module_action
from whk.corpus import all_entries
from whk.groupoid import FiniteGroupoid, groupoid_algebra, groupoid_family
from whk.smash import SmashBattery, SmashProduct, build_smash, smash_inner_battery
from whk.weakhopf import WeakHopfAlgebra


@dataclass(frozen=True, eq=False)
class FamilyMember:
    groupoid: FiniteGroupoid
    wha: WeakHopfAlgebra
    action: ModuleAction
    smash: SmashProduct
    battery: SmashBattery


@pytest.fixture(scope="session")
def corpus():
    return all_entries()


@pytest.fixture(scope="session")
def family():
    members = []
    for g in groupoid_family():
        wha = groupoid_algebra(g)
        action = ht_module_action(wha)
        smash = build_smash(action)
        members.append(FamilyMember(g, wha, action, smash, smash_inner_battery(smash)))
    return members
