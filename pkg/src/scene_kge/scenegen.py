"""Deterministic generator of desk-scale scene graphs.

Each scene is a 20-second drive: one scene node with a spatial location and
a temporal interval, plus `subscenes_per_scene` timestamped sub-scenes at
0.5 s spacing. Sub-scenes include object instances drawn from a catalog of
leaf feature-of-interest classes (first 9 entries are the Lyft-like slice,
all 23 the NuScenes-like one) and event instances paired to those objects.
Objects persist into the next sub-scene with probability
``object_persistence``.

Randomness comes from a single numpy PCG64 stream seeded by ``cfg.seed``
with a fixed draw order (per scene: location; per sub-scene: object-count
target, survival coins, fresh-object classes, event coins, event types), so
one seed always yields one graph, byte-identical after serialization.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .triplestore import KnowledgeGraph, Term
from .vocab import (
    HAS_BEGINNING,
    HAS_END,
    HAS_LOCATION,
    HAS_PART,
    HAS_PARTICIPANT,
    HAS_TIME,
    INCLUDES,
    INST_NS,
    IN_XSD_DATETIME,
    IS_PARTICIPANT_IN,
    IS_PART_OF,
    OWL_SUBCLASSOF,
    RDF_TYPE,
    SCENE_NS,
    XSD_DATETIME,
)

# (foi leaf, foi parent or None for direct FeatureOfInterest children,
#  ((event leaf, event mid), ...)); first 9 rows are the Lyft-like slice.
_CATALOG: tuple[tuple[str, str | None, tuple[tuple[str, str], ...]], ...] = (
    ("Car", "Vehicle", (("StoppedCarEvent", "VehicleEvent"),
                        ("MovingCarEvent", "VehicleEvent"),
                        ("ParkedCarEvent", "VehicleEvent"))),
    ("Truck", "Vehicle", (("StoppedTruckEvent", "VehicleEvent"),
                          ("MovingTruckEvent", "VehicleEvent"))),
    ("Bus", "Vehicle", (("StoppedBusEvent", "VehicleEvent"),
                        ("MovingBusEvent", "VehicleEvent"))),
    ("Bicycle", "Vehicle", (("MovingBicycleEvent", "VehicleEvent"),)),
    ("Motorcycle", "Vehicle", (("MovingMotorcycleEvent", "VehicleEvent"),)),
    ("OtherVehicle", "Vehicle", (("MovingVehicleEvent", "VehicleEvent"),)),
    ("EmergencyVehicle", "Vehicle", (("FlashingLightsEvent", "VehicleEvent"),)),
    ("Pedestrian", "Human", (("WalkingPedestrianEvent", "PedestrianEvent"),
                             ("StandingPedestrianEvent", "PedestrianEvent"))),
    ("Animal", None, (("CrossingAnimalEvent", "ObjectEvent"),)),
    ("ConstructionWorker", "Human", (("WorkingEvent", "PedestrianEvent"),)),
    ("PoliceOfficer", "Human", (("DirectingTrafficEvent", "PedestrianEvent"),)),
    ("ChildPedestrian", "Human", (("WalkingPedestrianEvent", "PedestrianEvent"),)),
    ("Trailer", "Vehicle", (("ParkedTrailerEvent", "VehicleEvent"),)),
    ("ConstructionVehicle", "Vehicle", (("DiggingEvent", "VehicleEvent"),)),
    ("PoliceVehicle", "Vehicle", (("FlashingLightsEvent", "VehicleEvent"),)),
    ("Ambulance", "Vehicle", (("FlashingLightsEvent", "VehicleEvent"),)),
    ("Barrier", "StaticObject", (("BlockingEvent", "ObjectEvent"),)),
    ("TrafficCone", "StaticObject", (("BlockingEvent", "ObjectEvent"),)),
    ("Debris", "StaticObject", (("BlockingEvent", "ObjectEvent"),)),
    ("BicycleRack", "StaticObject", (("BlockingEvent", "ObjectEvent"),)),
    ("PushablePullable", "MovableObject", (("PushedEvent", "ObjectEvent"),)),
    ("Stroller", "MovableObject", (("PushedEvent", "ObjectEvent"),)),
    ("Wheelchair", "MovableObject", (("MovingWheelchairEvent", "ObjectEvent"),)),
)

LYFT_CATALOG_SIZE = 9
NUSCENES_CATALOG_SIZE = 23

_NUM_LOCATIONS = 4
_SAMPLE_PERIOD = dt.timedelta(milliseconds=500)
_SCENE_SPACING = dt.timedelta(seconds=1000)
_EPOCH = dt.datetime(2019, 1, 1)

SAME_PARENT = "same_parent"
CROSS_PARENT = "cross_parent"


@dataclass
class GenConfig:
    num_scenes: int
    subscenes_per_scene: int = 40
    foi_catalog_size: int = LYFT_CATALOG_SIZE
    objects_per_subscene: tuple[int, int] = (3, 10)
    object_persistence: float = 0.9
    event_probability: float = 0.25
    seed: int = 0

    def validate(self):
        if self.num_scenes < 1:
            raise ValidationError("num_scenes must be positive")
        if self.subscenes_per_scene < 1:
            raise ValidationError("subscenes_per_scene must be positive")
        if not 1 <= self.foi_catalog_size <= len(_CATALOG):
            raise ValidationError(
                f"foi_catalog_size must be in 1..{len(_CATALOG)}"
            )
        lo, hi = self.objects_per_subscene
        if lo < 0 or lo > hi:
            raise ValidationError("objects_per_subscene must satisfy 0 <= min <= max")
        for name in ("object_persistence", "event_probability"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1]")
        if self.seed < 0:
            raise ValidationError("seed must be non-negative")


def _iri(local: str) -> Term:
    return Term.iri(INST_NS + local)


def _cls(name: str) -> Term:
    return Term.iri(SCENE_NS + name)


def _timestamp(t: dt.datetime) -> Term:
    return Term.literal(t.isoformat(timespec="milliseconds"), XSD_DATETIME)


def generate(cfg: GenConfig) -> KnowledgeGraph:
    """Generate a frozen base-variant graph, ontology included."""
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    kg = KnowledgeGraph()

    rdf_type = Term.iri(RDF_TYPE)
    subclass = Term.iri(OWL_SUBCLASSOF)
    has_part = Term.iri(HAS_PART)
    is_part_of = Term.iri(IS_PART_OF)
    includes = Term.iri(INCLUDES)
    has_participant = Term.iri(HAS_PARTICIPANT)
    is_participant_in = Term.iri(IS_PARTICIPANT_IN)
    has_location = Term.iri(HAS_LOCATION)
    has_time = Term.iri(HAS_TIME)
    has_beginning = Term.iri(HAS_BEGINNING)
    has_end = Term.iri(HAS_END)
    in_datetime = Term.iri(IN_XSD_DATETIME)

    catalog = _CATALOG[: cfg.foi_catalog_size]

    # Ontology: structural classes plus the subclass chains the catalog uses.
    kg.insert_terms(_cls("TimeInstant"), subclass, _cls("TemporalRegion"))
    kg.insert_terms(_cls("SpatialPoint"), subclass, _cls("SpatialRegion"))
    for leaf, parent, events in catalog:
        if parent is None:
            kg.insert_terms(_cls(leaf), subclass, _cls("FeatureOfInterest"))
        else:
            kg.insert_terms(_cls(leaf), subclass, _cls(parent))
            kg.insert_terms(_cls(parent), subclass, _cls("FeatureOfInterest"))
        for ev_leaf, ev_mid in events:
            kg.insert_terms(_cls(ev_leaf), subclass, _cls(ev_mid))
            kg.insert_terms(_cls(ev_mid), subclass, _cls("Event"))

    for k in range(_NUM_LOCATIONS):
        kg.insert_terms(_iri(f"location-{k}"), rdf_type, _cls("SpatialRegion"))

    for i in range(cfg.num_scenes):
        scene = _iri(f"scene-{i:04d}")
        scene_start = _EPOCH + i * _SCENE_SPACING
        scene_end = scene_start + cfg.subscenes_per_scene * _SAMPLE_PERIOD

        loc = int(rng.integers(0, _NUM_LOCATIONS))
        kg.insert_terms(scene, rdf_type, _cls("Scene"))
        kg.insert_terms(scene, has_location, _iri(f"location-{loc}"))

        interval = _iri(f"scene-{i:04d}-interval")
        begin = _iri(f"scene-{i:04d}-begin")
        end = _iri(f"scene-{i:04d}-end")
        kg.insert_terms(scene, has_time, interval)
        kg.insert_terms(interval, rdf_type, _cls("TemporalRegion"))
        kg.insert_terms(interval, has_beginning, begin)
        kg.insert_terms(interval, has_end, end)
        kg.insert_terms(begin, rdf_type, _cls("TimeInstant"))
        kg.insert_terms(begin, in_datetime, _timestamp(scene_start))
        kg.insert_terms(end, rdf_type, _cls("TimeInstant"))
        kg.insert_terms(end, in_datetime, _timestamp(scene_end))

        lo, hi = cfg.objects_per_subscene
        obj_counter = 0
        current: list[tuple[Term, int]] = []  # (object node, catalog row)
        for j in range(cfg.subscenes_per_scene):
            sub = _iri(f"scene-{i:04d}-sample-{j:03d}")
            kg.insert_terms(scene, has_part, sub)
            kg.insert_terms(sub, is_part_of, scene)
            kg.insert_terms(sub, rdf_type, _cls("Scene"))

            instant = _iri(f"scene-{i:04d}-sample-{j:03d}-time")
            kg.insert_terms(sub, has_time, instant)
            kg.insert_terms(instant, rdf_type, _cls("TimeInstant"))
            kg.insert_terms(instant, in_datetime,
                            _timestamp(scene_start + j * _SAMPLE_PERIOD))
            point = _iri(f"scene-{i:04d}-sample-{j:03d}-point")
            kg.insert_terms(sub, has_location, point)
            kg.insert_terms(point, rdf_type, _cls("SpatialPoint"))

            target = int(rng.integers(lo, hi + 1))
            if j > 0 and current:
                coins = rng.random(len(current))
                current = [pair for pair, c in zip(current, coins)
                           if c < cfg.object_persistence]
            elif j == 0:
                current = []
            while len(current) < target:
                row = int(rng.integers(0, len(catalog)))
                obj = _iri(f"scene-{i:04d}-obj-{obj_counter:03d}")
                obj_counter += 1
                kg.insert_terms(obj, rdf_type, _cls(catalog[row][0]))
                current.append((obj, row))

            for obj, _ in current:
                kg.insert_terms(sub, includes, obj)

            if current:
                ev_coins = rng.random(len(current))
            else:
                ev_coins = np.empty(0)
            ev_counter = 0
            for (obj, row), coin in zip(current, ev_coins):
                if coin < cfg.event_probability:
                    events = catalog[row][2]
                    ev_row = int(rng.integers(0, len(events)))
                    ev = _iri(f"scene-{i:04d}-sample-{j:03d}-event-{ev_counter:02d}")
                    ev_counter += 1
                    kg.insert_terms(ev, rdf_type, _cls(events[ev_row][0]))
                    kg.insert_terms(sub, includes, ev)
                    kg.insert_terms(ev, has_participant, obj)
                    kg.insert_terms(obj, is_participant_in, ev)

    return kg.freeze()


def split_scene_pairs(kg: KnowledgeGraph, mode: str) -> list[tuple[int, int]]:
    """Unordered sub-scene pairs, either sharing a hasPart parent or not.

    Sub-scenes are the objects of hasPart triples. Pairs come back with
    a < b, sorted; the two modes partition all sub-scene pairs.
    """
    if mode not in (SAME_PARENT, CROSS_PARENT):
        raise ValidationError(f"unknown pair mode: {mode!r}")
    part_rel = kg.rel_id(Term.iri(HAS_PART))
    if part_rel is None:
        return []
    parents: dict[int, set[int]] = {}
    for parent, child in kg.triples_with_predicate(part_rel):
        parents.setdefault(child, set()).add(parent)
    children = sorted(parents)
    want_same = mode == SAME_PARENT
    pairs = []
    for ai, a in enumerate(children):
        pa = parents[a]
        for b in children[ai + 1:]:
            same = not pa.isdisjoint(parents[b])
            if same == want_same:
                pairs.append((a, b))
    return pairs
