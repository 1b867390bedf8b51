#!/usr/bin/env python3
"""Regenerate data/ontology/geo.tsv from the geonamescache country and city tables.

Usage: pip install geonamescache && python3 scripts/generate_geo_ontology.py

Countries: every geonames country with a population of at least 1,000 (243).
Sub-countries: the most populous cities (4,021) plus four hand-placed records that
exercise toponym ambiguity (Camden AU/GB, Isle of Wight GB/US).
"""
import pathlib
import sys

import geonamescache

ROOT = pathlib.Path(__file__).resolve().parent.parent
SUB_COUNTRY_TARGET = 4025

HAND_PLACED = [
    ("AU-camden", "Camden", "AU", -34.0543, 150.6964),
    ("GB-camden", "Camden", "GB", 51.5517, -0.1588),
    ("GB-isle-of-wight", "Isle of Wight", "GB", 50.6938, -1.3047),
    ("US-isle-of-wight", "Isle of Wight", "US", 36.9068, -76.7067),
]

# Dissolved countries that still carry populations in the geonames table but
# no longer have cities attached; anchored on their former capitals.
FORMER_CAPITALS = {
    "AN": (12.1084, -68.9335),
    "CS": (44.8040, 20.4651),
}

# City names that collide with everyday English words; tagging them would flood
# the LOCATION class with false positives.
COMMON_WORDS = {
    "mobile", "reading", "bath", "split", "nice", "orange", "mission", "surprise",
    "independence", "concord", "hope", "union", "enterprise", "commerce", "temple",
    "man", "bo", "ho", "bar", "police", "of", "deal", "sale", "kota", "aba", "ede",
    "ife", "bus", "kandi", "gap", "wells", "marks", "sandy", "lincoln", "jackson",
    "florence", "victoria", "washington", "franklin", "chester", "oxford", "cambridge",
    "york", "march", "june", "may", "august", "nancy", "troy", "eugene", "tyler",
    "irving", "carson", "kent", "grant", "homestead", "lowell", "norman", "lawrence",
    "ogden", "layton", "arlington", "columbia", "georgia", "jersey", "salem",
}


def normalize(term: str) -> str:
    return " ".join(term.lower().split()).strip(".,;:!?'\"()[]{}")


def disease_synonyms() -> set[str]:
    out = set()
    for line in (ROOT / "data/ontology/diseases.tsv").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        out.add(normalize(fields[2]))
        for syn in fields[3].split("|"):
            if syn:
                out.add(normalize(syn))
    return out


def main() -> int:
    from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

    gc = geonamescache.GeonamesCache()
    countries = {cc: c for cc, c in gc.get_countries().items() if c["population"] >= 1000}
    cities = gc.get_cities()
    anchors = geonamescache.GeonamesCache(min_city_population=500).get_cities()

    by_country: dict[str, list] = {}
    for city in anchors.values():
        by_country.setdefault(city["countrycode"], []).append(city)

    country_rows = []
    for cc, c in sorted(countries.items()):
        pool = by_country.get(cc, [])
        capital = [x for x in pool if x["name"] == c["capital"]]
        anchor = capital[0] if capital else max(pool, key=lambda x: x["population"], default=None)
        if anchor is None and cc in FORMER_CAPITALS:
            lat, lon = FORMER_CAPITALS[cc]
            country_rows.append((cc, c["name"], "Country", cc, lat, lon))
            continue
        if anchor is None:
            print(f"no coordinate anchor for {cc}", file=sys.stderr)
            return 1
        country_rows.append((cc, c["name"], "Country", cc, anchor["latitude"], anchor["longitude"]))

    blocked = disease_synonyms() | set(ENGLISH_STOP_WORDS) | COMMON_WORDS
    blocked |= {normalize(c["name"]) for c in countries.values()}
    blocked |= {normalize(name) for _, name, *_ in HAND_PLACED}

    picked = []
    for city in sorted(cities.values(), key=lambda x: (-x["population"], x["geonameid"])):
        if len(picked) == SUB_COUNTRY_TARGET - len(HAND_PLACED):
            break
        name = city["name"]
        if city["countrycode"] not in countries or "\t" in name or "|" in name:
            continue
        if normalize(name) in blocked or len(normalize(name)) < 3:
            continue
        picked.append((f"{city['countrycode']}-{city['geonameid']}", name, "SubCountry",
                       city["countrycode"], city["latitude"], city["longitude"]))
    picked.extend((i, n, "SubCountry", p, lat, lon) for i, n, p, lat, lon in HAND_PLACED)

    lines = [
        "# Geographical ontology: countries and sub-countries with coordinates.",
        "# Generated by scripts/generate_geo_ontology.py from geonames (CC BY 4.0).",
        "# G<TAB>id<TAB>name<TAB>kind<TAB>parent_country_id<TAB>lat<TAB>lon",
    ]
    for row in country_rows + sorted(picked):
        ident, name, kind, parent, lat, lon = row
        lines.append(f"G\t{ident}\t{name.strip()}\t{kind}\t{parent}\t{lat:.4f}\t{lon:.4f}")
    (ROOT / "data/ontology/geo.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{len(country_rows)} countries, {len(picked)} sub-countries")
    return 0


if __name__ == "__main__":
    sys.exit(main())
