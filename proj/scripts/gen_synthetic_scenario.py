#!/usr/bin/env python3
"""Regenerates the bundled synthetic scenario under scenarios/synthetic/.

Deterministic grid city: 1.2 x 1.0 km, ~100 m street pitch, mixed building
types, a few parks, and 12 LTE stations. Outputs map.osm, stations.csv and
scenario.ini. Run from the repository root:

    python3 scripts/gen_synthetic_scenario.py
"""

import math
import random
from pathlib import Path

EARTH_RADIUS = 6_371_000.0
LAT0 = 27.706
LON0 = 85.318
MX, MY = 1200.0, 1000.0
BLOCK = 100.0

TYPE_WEIGHTS = [
    ("residential", 0.42),
    ("small_business", 0.18),
    ("office", 0.15),
    ("hotel", 0.08),
    ("school", 0.07),
    ("hospital", 0.05),
    ("mall", 0.05),
]

PARK_BLOCKS = {(1, 7), (4, 2), (6, 5), (9, 8), (10, 1), (2, 4)}
EMPTY_BLOCKS = {(0, 0), (3, 9), (5, 0), (8, 3), (11, 9), (0, 5), (11, 0), (7, 9)}

# Stations sit near these block coordinates (jittered), leaving the map rim
# and several interior pockets uncovered so placement has room to work.
STATION_BLOCKS = [
    (1, 2), (1, 5), (1, 8), (4, 1), (4, 4), (4, 7),
    (7, 2), (7, 5), (7, 8), (10, 3), (10, 6), (5, 9),
]


def to_latlon(x: float, y: float) -> tuple[float, float]:
    lat = LAT0 + (y - MY / 2.0) / EARTH_RADIUS * 180.0 / math.pi
    lon = LON0 + (x - MX / 2.0) / (EARTH_RADIUS * math.cos(math.radians(LAT0))) * 180.0 / math.pi
    return lat, lon


class Osm:
    def __init__(self) -> None:
        self.nodes: list[str] = []
        self.ways: list[str] = []
        self._next_node = 1
        self._next_way = 10_000

    def node(self, x: float, y: float) -> int:
        lat, lon = to_latlon(x, y)
        nid = self._next_node
        self._next_node += 1
        self.nodes.append(f'  <node id="{nid}" lat="{lat:.9f}" lon="{lon:.9f}"/>')
        return nid

    def way(self, refs: list[int], tags: dict[str, str], close: bool = False) -> None:
        wid = self._next_way
        self._next_way += 1
        lines = [f'  <way id="{wid}">']
        for ref in refs:
            lines.append(f'    <nd ref="{ref}"/>')
        if close:
            lines.append(f'    <nd ref="{refs[0]}"/>')
        for k, v in tags.items():
            lines.append(f'    <tag k="{k}" v="{v}"/>')
        lines.append("  </way>")
        self.ways.append("\n".join(lines))

    def rect(self, x0: float, y0: float, x1: float, y1: float, tags: dict[str, str]) -> None:
        refs = [self.node(x0, y0), self.node(x1, y0), self.node(x1, y1), self.node(x0, y1)]
        self.way(refs, tags, close=True)

    def dump(self) -> str:
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n<osm version="0.6">\n'
            + "\n".join(self.nodes)
            + "\n"
            + "\n".join(self.ways)
            + "\n</osm>\n"
        )


def pick_type(rng: random.Random) -> str:
    r = rng.random()
    acc = 0.0
    for name, w in TYPE_WEIGHTS:
        acc += w
        if r < acc:
            return name
    return "residential"


def main() -> None:
    rng = random.Random(20240917)
    osm = Osm()

    # Street grid, 2 lanes (7 m wide).
    for i in range(int(MX / BLOCK) + 1):
        x = i * BLOCK
        osm.way([osm.node(x, 0.0), osm.node(x, MY)], {"highway": "residential", "lanes": "2"})
    for j in range(int(MY / BLOCK) + 1):
        y = j * BLOCK
        osm.way([osm.node(0.0, y), osm.node(MX, y)], {"highway": "residential", "lanes": "2"})

    building_centres: list[tuple[float, float]] = []
    for bi in range(int(MX / BLOCK)):
        for bj in range(int(MY / BLOCK)):
            x0, y0 = bi * BLOCK, bj * BLOCK
            if (bi, bj) in PARK_BLOCKS:
                osm.rect(x0 + 8, y0 + 8, x0 + BLOCK - 8, y0 + BLOCK - 8, {"leisure": "park"})
                continue
            if (bi, bj) in EMPTY_BLOCKS:
                continue
            kind = pick_type(rng)
            split = rng.random()
            if split < 0.30:
                # Two buildings side by side; some pairs nearly touch so the
                # gap-merge path gets exercised on real data.
                gap = 0.15 if rng.random() < 0.3 else rng.uniform(8.0, 16.0)
                w1 = rng.uniform(24.0, 38.0)
                w2 = rng.uniform(24.0, 38.0)
                h = rng.uniform(30.0, 60.0)
                ox = x0 + rng.uniform(10.0, BLOCK - 10.0 - (w1 + gap + w2))
                oy = y0 + rng.uniform(10.0, BLOCK - 10.0 - h)
                osm.rect(ox, oy, ox + w1, oy + h, {"building": kind})
                kind2 = pick_type(rng)
                osm.rect(ox + w1 + gap, oy, ox + w1 + gap + w2, oy + h, {"building": kind2})
                building_centres.append((ox + w1 / 2.0, oy + h / 2.0))
                building_centres.append((ox + w1 + gap + w2 / 2.0, oy + h / 2.0))
            elif split < 0.42:
                # L-shaped building as two overlapping rectangles.
                w = rng.uniform(40.0, 64.0)
                h = rng.uniform(40.0, 64.0)
                ox = x0 + rng.uniform(10.0, BLOCK - 10.0 - w)
                oy = y0 + rng.uniform(10.0, BLOCK - 10.0 - h)
                arm = rng.uniform(16.0, 24.0)
                osm.rect(ox, oy, ox + w, oy + arm, {"building": kind})
                osm.rect(ox, oy, ox + arm, oy + h, {"building": kind})
                building_centres.append((ox + w / 2.0, oy + arm / 2.0))
            else:
                w = rng.uniform(34.0, 66.0)
                h = rng.uniform(34.0, 66.0)
                ox = x0 + rng.uniform(9.0, BLOCK - 9.0 - w)
                oy = y0 + rng.uniform(9.0, BLOCK - 9.0 - h)
                osm.rect(ox, oy, ox + w, oy + h, {"building": kind})
                building_centres.append((ox + w / 2.0, oy + h / 2.0))

    out_dir = Path(__file__).resolve().parent.parent / "scenarios" / "synthetic"
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "map.osm").write_text(osm.dump())

    # Stations near the centre of their block's building, jittered a few
    # metres so snapping is non-trivial.
    rows = ["id,lat,lon,provider,kind"]
    for idx, (bi, bj) in enumerate(STATION_BLOCKS, start=1):
        bx = bi * BLOCK + BLOCK / 2.0
        by = bj * BLOCK + BLOCK / 2.0
        best = min(building_centres, key=lambda c: (c[0] - bx) ** 2 + (c[1] - by) ** 2)
        lat, lon = to_latlon(best[0] + rng.uniform(-8.0, 8.0), best[1] + rng.uniform(-8.0, 8.0))
        provider = "NCell" if idx % 2 else "NTCell"
        rows.append(f"{idx},{lat:.9f},{lon:.9f},{provider},LTE")
    (out_dir / "stations.csv").write_text("\n".join(rows) + "\n")
    print(f"wrote {out_dir}/map.osm ({len(osm.ways)} ways) and stations.csv")


if __name__ == "__main__":
    main()
