#!/usr/bin/env python3
# Copyright 2026 The sparqlbench Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled fixture datasets under data/. Output is deterministic."""

import json
import os
import random
import re
import sys

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
DATA = os.path.join(ROOT, "data")


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def manifest(name, mode, preamble, graph, records, expand=False):
    counts = {"train": sum(r["split"] == "train" for r in records),
              "test": sum(r["split"] == "test" for r in records)}
    doc = {
        "name": name,
        "query_mode": mode,
        "prefix_preamble": preamble,
        "backend": {"type": "local", "graph": [graph]},
        "expand_paraphrases": expand,
        "counts": counts,
        "records": records,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def ndjson(rows):
    return "".join(json.dumps(r, ensure_ascii=False, separators=(",", ":")) + "\n" for r in rows)


# ---------------------------------------------------------------- organization

ORGA_PREFIXES = {
    "": "https://example.org/orga#",
    "foaf": "http://xmlns.com/foaf/0.1/",
    "org": "http://www.w3.org/ns/org#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "vcard": "http://www.w3.org/2006/vcard/ns#",
}

PEOPLE = [
    # local, first, last, dept, age, phone
    ("anne", "Anne", "Miller", "research", 41, "+49-341-1001"),
    ("bob", "Bob", "Tanner", "sales", 35, "+49-341-1002"),
    ("carol", "Carol", "Jensen", "research", 29, "+49-341-1003"),
    ("dave", "David", "Kim", "it", 52, "+49-341-1004"),
    ("eve", "Eve", "Rossi", "marketing", 33, "+49-341-1005"),
    ("frank", "Frank", "Weber", "sales", 47, "+49-341-1006"),
    ("grace", "Grace", "Lee", "it", 38, "+49-341-1007"),
    ("heidi", "Heidi", "Novak", "marketing", 26, "+49-341-1008"),
    ("ivan", "Ivan", "Petrov", "research", 44, "+49-341-1009"),
    ("judy", "Judy", "Garcia", "sales", 31, "+49-341-1010"),
    ("ken", "Ken", "Sato", "it", 39, "+49-341-1011"),
    ("laura", "Laura", "Schmidt", "marketing", 50, "+49-341-1012"),
]
DEPTS = [
    ("research", "Research", "anne", "Building A"),
    ("sales", "Sales", "frank", "Building B"),
    ("it", "IT", "dave", "Building C"),
    ("marketing", "Marketing", "laura", "Building B"),
]


def orga_graph():
    out = ["@prefix %s: <%s> ." % (p, iri) for p, iri in ORGA_PREFIXES.items()]
    out.append("")
    out.append(":acme a org:Organization ;\n    rdfs:label \"ACME Corporation\" .")
    for d, label, head, site in DEPTS:
        out.append(":%s a org:OrganizationalUnit ;\n    rdfs:label \"%s\" ;\n    org:subOrganizationOf :acme ;\n"
                   "    :location \"%s\" ." % (d, label, site))
    for local, first, last, dept, age, phone in PEOPLE:
        lines = [":%s a foaf:Person" % local,
                 "foaf:firstName \"%s\"" % first,
                 "foaf:surname \"%s\"" % last,
                 "foaf:name \"%s %s\"" % (first, last),
                 "foaf:mbox <mailto:%s@example.org>" % local,
                 "foaf:age %d" % age,
                 "vcard:tel \"%s\"" % phone,
                 "org:memberOf :%s" % dept]
        for d, _, head, _ in DEPTS:
            if head == local:
                lines.append("org:headOf :%s" % d)
        out.append(" ;\n    ".join(lines) + " .")
    return "\n".join(out) + "\n"


def orga_records():
    pool = []
    for local, first, last, dept, age, phone in PEOPLE:
        full = "%s %s" % (first, last)
        pool.append(("What is the surname of %s?" % full, "Which surname does %s have?" % full,
                     "SELECT ?surname WHERE { :%s foaf:surname ?surname . }" % local))
        pool.append(("What is the email address of %s?" % full, "How can I email %s?" % full,
                     "SELECT ?mbox WHERE { :%s foaf:mbox ?mbox . }" % local))
        pool.append(("Which department does %s work in?" % full, "In which department is %s?" % full,
                     "SELECT ?department WHERE { :%s org:memberOf ?department . }" % local))
        pool.append(("How old is %s?" % full, "What is the age of %s?" % full,
                     "SELECT ?age WHERE { :%s foaf:age ?age . }" % local))
        pool.append(("What is the phone number of %s?" % full, "Under which number can %s be reached?" % full,
                     "SELECT ?phone WHERE { :%s vcard:tel ?phone . }" % local))
    for d, label, head, site in DEPTS:
        pool.append(("Who works in the %s department?" % label, "Which people are members of %s?" % label,
                     "SELECT ?person WHERE { ?person org:memberOf :%s . }" % d))
        pool.append(("How many people work in the %s department?" % label,
                     "What is the number of employees in %s?" % label,
                     "SELECT (COUNT(?person) AS ?count) WHERE { ?person org:memberOf :%s . }" % d))
        pool.append(("Who is the head of the %s department?" % label, "Who leads %s?" % label,
                     "SELECT ?head WHERE { ?head org:headOf :%s . }" % d))
    pool = pool[:69]
    assert len(pool) == 69
    ids = ["orga-%03d" % (i + 1) for i in range(69)]
    bob_surname = ids[[q for q, _, _ in pool].index("What is the surname of Bob Tanner?")]
    anne_surname = ids[[q for q, _, _ in pool].index("What is the surname of Anne Miller?")]
    rng = random.Random(53)
    candidates = [i for i in ids if i not in (bob_surname, anne_surname)]
    test = set(rng.sample(candidates, 15)) | {bob_surname}
    records = []
    for rid, (q, p, query) in zip(ids, pool):
        records.append({"id": rid, "split": "test" if rid in test else "train", "question": q,
                        "paraphrase": p, "query": query})
    return records


# ---------------------------------------------------------------- coypu

COYPU_PREFIXES = {
    "ns2": "https://schema.coypu.org/global#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}
COUNTRIES = [
    ("DEU", "Germany", 83200000), ("NLD", "Netherlands", 17700000), ("BEL", "Belgium", 11600000),
    ("FRA", "France", 67900000), ("ESP", "Spain", 47600000), ("ITA", "Italy", 58900000),
    ("POL", "Poland", 37700000), ("CHN", "China", 1412000000), ("SGP", "Singapore", 5600000),
    ("USA", "United States", 333300000),
]
PORTS = [
    ("DEHAM", "Hamburg", "DEU", "53.5461", "9.9661"), ("DEBRV", "Bremerhaven", "DEU", "53.5396", "8.5809"),
    ("NLRTM", "Rotterdam", "NLD", "51.9496", "4.1453"), ("NLAMS", "Amsterdam", "NLD", "52.4075", "4.7924"),
    ("BEANR", "Antwerp", "BEL", "51.2637", "4.3986"), ("BEZEE", "Zeebrugge", "BEL", "51.3325", "3.2063"),
    ("FRLEH", "Le Havre", "FRA", "49.4833", "0.1167"), ("FRMRS", "Marseille", "FRA", "43.3361", "5.3536"),
    ("ESVLC", "Valencia", "ESP", "39.4436", "-0.3167"), ("ESALG", "Algeciras", "ESP", "36.1333", "-5.4333"),
    ("ITGOA", "Genoa", "ITA", "44.4056", "8.9463"), ("ITTRS", "Trieste", "ITA", "45.6495", "13.7768"),
    ("PLGDN", "Gdansk", "POL", "54.3975", "18.6683"), ("CNSHA", "Shanghai", "CHN", "31.2304", "121.4737"),
    ("CNNGB", "Ningbo", "CHN", "29.8683", "121.544"), ("SGSIN", "Singapore", "SGP", "1.2644", "103.8222"),
    ("USLAX", "Los Angeles", "USA", "33.7395", "-118.2599"), ("USNYC", "New York", "USA", "40.6681", "-74.0451"),
    ("USSAV", "Savannah", "USA", "32.0835", "-81.0998"),
]
EVENTS = [
    ("flood-2021-07", "July 2021 flood", "DEU"), ("strike-2022-06", "June 2022 port strike", "DEU"),
    ("typhoon-2019-08", "Typhoon Lekima", "CHN"), ("storm-2022-02", "Storm Eunice", "NLD"),
    ("fire-2023-03", "Warehouse fire", "BEL"),
]
DATA_COYPU = "https://data.coypu.org/"


def port_iri(code):
    return "<%sinfrastructure/port/%s>" % (DATA_COYPU, code)


def country_iri(code):
    return "<%scountry/%s>" % (DATA_COYPU, code)


def event_iri(code):
    return "<%sevent/%s>" % (DATA_COYPU, code)


def coypu_graph():
    out = ["@prefix %s: <%s> ." % (p, iri) for p, iri in COYPU_PREFIXES.items()]
    out.append("")
    for code, name, pop in COUNTRIES:
        out.append("%s a ns2:Country ;\n    ns2:hasName \"%s\" ;\n    ns2:hasIsoCode \"%s\" ;\n"
                   "    ns2:hasPopulation %d ." % (country_iri(code), name, code, pop))
    for code, name, cc, lat, lon in PORTS:
        out.append("%s a ns2:Port ;\n    ns2:hasName \"%s\" ;\n    ns2:hasUnLocode \"%s\" ;\n"
                   "    ns2:hasLatitude %s ;\n    ns2:hasLongitude %s ;\n    ns2:hasCountryLocation %s ."
                   % (port_iri(code), name, code, lat, lon, country_iri(cc)))
    for code, name, cc in EVENTS:
        out.append("%s a ns2:Disaster ;\n    rdfs:label \"%s\" ;\n    ns2:hasImpactOn %s ."
                   % (event_iri(code), name, country_iri(cc)))
    return "\n".join(out) + "\n"


def coypu_records():
    pool = []
    for code, name, cc, lat, lon in PORTS:
        p = port_iri(code)
        pool.append(("What is the latitude of the port of %s?" % name, "At which latitude is the %s port?" % name,
                     "SELECT ?latitude WHERE { %s ns2:hasLatitude ?latitude . }" % p))
        pool.append(("What is the longitude of the port of %s?" % name, "At which longitude is the %s port?" % name,
                     "SELECT ?longitude WHERE { %s ns2:hasLongitude ?longitude . }" % p))
        pool.append(("In which country is the port of %s located?" % name, "Which country hosts the %s port?" % name,
                     "SELECT ?country WHERE { %s ns2:hasCountryLocation ?country . }" % p))
        pool.append(("What is the UN/LOCODE of the port of %s?" % name, "Which UN/LOCODE does %s have?" % name,
                     "SELECT ?code WHERE { %s ns2:hasUnLocode ?code . }" % p))
    for code, name, pop in COUNTRIES:
        c = country_iri(code)
        pool.append(("What is the population of %s?" % name, "How many people live in %s?" % name,
                     "SELECT ?population WHERE { %s ns2:hasPopulation ?population . }" % c))
        pool.append(("Which ports are located in %s?" % name, "List the ports in %s." % name,
                     "SELECT ?port WHERE { ?port ns2:hasCountryLocation %s . }" % c))
        pool.append(("How many ports are located in %s?" % name, "What is the number of ports in %s?" % name,
                     "SELECT (COUNT(?port) AS ?count) WHERE { ?port ns2:hasCountryLocation %s . }" % c))
        pool.append(("Which disasters had an impact on %s?" % name, "What disasters affected %s?" % name,
                     "SELECT ?event WHERE { ?event ns2:hasImpactOn %s . }" % c))
        pool.append(("What is the ISO code of %s?" % name, "Which ISO code does %s have?" % name,
                     "SELECT ?iso WHERE { %s ns2:hasIsoCode ?iso . }" % c))
    for code, name, cc in EVENTS:
        e = event_iri(code)
        pool.append(("Which country was affected by the %s?" % name, "Where did the %s have an impact?" % name,
                     "SELECT ?country WHERE { %s ns2:hasImpactOn ?country . }" % e))
    pool.append(("Which ports lie in countries affected by a disaster?", "Name ports in disaster-hit countries.",
                 "SELECT DISTINCT ?port WHERE { ?event ns2:hasImpactOn ?country . "
                 "?port ns2:hasCountryLocation ?country . }"))
    assert len(pool) >= 131, len(pool)
    pool = pool[:131]
    ids = ["coypu-%03d" % (i + 1) for i in range(131)]
    rng = random.Random(131)
    test = set(rng.sample(ids, 26))
    return [{"id": rid, "split": "test" if rid in test else "train", "question": q, "paraphrase": p, "query": query}
            for rid, (q, p, query) in zip(ids, pool)]


# ---------------------------------------------------------------- qald10

WD = "http://www.wikidata.org/entity/"
WDT = "http://www.wikidata.org/prop/direct/"
QALD_PREAMBLE = ("PREFIX wd: <http://www.wikidata.org/entity/> "
                 "PREFIX wdt: <http://www.wikidata.org/prop/direct/> ")
FIRST = ["Ada", "Bruno", "Chiara", "Dmitri", "Elena", "Felix", "Greta", "Hugo", "Ines", "Jonas",
         "Kaori", "Lars", "Maya", "Nils", "Olga", "Pablo", "Quinn", "Rosa", "Stefan", "Tomas"]
LAST = ["Albers", "Brandt", "Conti", "Duval", "Eriksen", "Fischer", "Gallo", "Horvat", "Ibsen", "Jovanovic",
        "Keller", "Lindqvist", "Moreau", "Nowak", "Ortega", "Pereira"]
CITIES = ["Aldenburg", "Brixmoor", "Calveda", "Dornholm", "Eskarne", "Falkrest", "Gravina", "Hollmark",
          "Istrava", "Jorvale", "Kelmora", "Lunden", "Marrow Bay", "Norvik", "Ostrela", "Pellago",
          "Quarnby", "Rostavia", "Silvaine", "Tormund", "Ulmfirth", "Varenna", "Westmere", "Yarrowby",
          "Zandorf", "Amberly", "Belcaro", "Cindral", "Dellin", "Erwood"]
COUNTRIES_QALD = ["Arvenia", "Belmark", "Corvinia", "Dalmora", "Estoria", "Feronia", "Galdor", "Hesperia",
                  "Illyra", "Jastrova"]
OCCUPATIONS = [("Q82955", "politician"), ("Q36180", "writer"), ("Q33999", "actor"), ("Q3665646", "basketball player"),
               ("Q901", "scientist"), ("Q639669", "musician")]


def qald_world():
    """Entities and triples of the Wikidata-style excerpt."""
    rng = random.Random(394)
    next_q = [2000000]

    def qid():
        next_q[0] += 7
        return "Q%d" % next_q[0]

    countries = []
    for name in COUNTRIES_QALD:
        countries.append({"q": qid(), "name": name, "pop": rng.randrange(2, 90) * 1000000})
    cities = []
    for i, name in enumerate(CITIES):
        country = countries[i % len(countries)]
        cities.append({"q": qid(), "name": name, "country": country, "pop": rng.randrange(20, 2000) * 1000})
    for i, country in enumerate(countries):
        country["capital"] = cities[i]
    people = [{"q": "Q25369", "name": "Kobe Bryant", "occ": OCCUPATIONS[3], "born": None, "year": 1978}]
    used = {"Kobe Bryant"}
    while len(people) < 90:
        name = "%s %s" % (rng.choice(FIRST), rng.choice(LAST))
        if name in used:
            continue
        used.add(name)
        people.append({"q": qid(), "name": name, "occ": rng.choice(OCCUPATIONS), "born": None,
                       "year": rng.randrange(1900, 2000)})
    for p in people:
        p["born"] = rng.choice(cities)
        p["citizen"] = p["born"]["country"]
    return countries, cities, people


def qald_graph(world):
    countries, cities, people = world
    out = ["@prefix wd: <%s> ." % WD, "@prefix wdt: <%s> ." % WDT,
           "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .",
           "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .", ""]
    out.append("wd:Q6256 rdfs:label \"country\"@en .")
    out.append("wd:Q515 rdfs:label \"city\"@en .")
    out.append("wd:Q5 rdfs:label \"human\"@en .")
    for q, label in OCCUPATIONS:
        out.append("wd:%s rdfs:label \"%s\"@en ." % (q, label))
    for c in countries:
        out.append("wd:%s wdt:P31 wd:Q6256 ;\n    rdfs:label \"%s\"@en ;\n    wdt:P1082 %d ;\n    wdt:P36 wd:%s ."
                   % (c["q"], c["name"], c["pop"], c["capital"]["q"]))
    for c in cities:
        out.append("wd:%s wdt:P31 wd:Q515 ;\n    rdfs:label \"%s\"@en ;\n    wdt:P1082 %d ;\n    wdt:P17 wd:%s ."
                   % (c["q"], c["name"], c["pop"], c["country"]["q"]))
    for p in people:
        out.append("wd:%s wdt:P31 wd:Q5 ;\n    rdfs:label \"%s\"@en ;\n    wdt:P106 wd:%s ;\n    wdt:P19 wd:%s ;\n"
                   "    wdt:P27 wd:%s ;\n    wdt:P569 \"%d-01-01\"^^xsd:date ."
                   % (p["q"], p["name"], p["occ"][0], p["born"]["q"], p["citizen"]["q"], p["year"]))
    return "\n".join(out) + "\n"


def qald_records(world):
    countries, cities, people = world
    pool = []  # (question, query, kind) kind in {"plain", "count", "ask", "unsupported"}
    for p in people:
        pool.append(("Where was %s born?" % p["name"],
                     QALD_PREAMBLE + "SELECT ?place WHERE { wd:%s wdt:P19 ?place . }" % p["q"], "plain"))
        pool.append(("What is the occupation of %s?" % p["name"],
                     QALD_PREAMBLE + "SELECT ?occupation WHERE { wd:%s wdt:P106 ?occupation . }" % p["q"], "plain"))
        pool.append(("When was %s born?" % p["name"],
                     QALD_PREAMBLE + "SELECT ?date WHERE { wd:%s wdt:P569 ?date . }" % p["q"], "plain"))
    for c in cities:
        pool.append(("How many inhabitants does %s have?" % c["name"],
                     QALD_PREAMBLE + "SELECT ?population WHERE { wd:%s wdt:P1082 ?population . }" % c["q"], "plain"))
        pool.append(("In which country is %s?" % c["name"],
                     QALD_PREAMBLE + "SELECT ?country WHERE { wd:%s wdt:P17 ?country . }" % c["q"], "plain"))
        pool.append(("Who was born in %s?" % c["name"],
                     QALD_PREAMBLE + "SELECT ?person WHERE { ?person wdt:P19 wd:%s . }" % c["q"], "plain"))
        pool.append(("How many people were born in %s?" % c["name"],
                     QALD_PREAMBLE + "SELECT (COUNT(?person) AS ?count) WHERE { ?person wdt:P19 wd:%s . }" % c["q"],
                     "count"))
    for c in countries:
        pool.append(("What is the capital of %s?" % c["name"],
                     QALD_PREAMBLE + "SELECT ?capital WHERE { wd:%s wdt:P36 ?capital . }" % c["q"], "plain"))
        pool.append(("How many cities of %s are in the database?" % c["name"],
                     QALD_PREAMBLE + "SELECT (COUNT(?city) AS ?count) WHERE { ?city wdt:P17 wd:%s . }" % c["q"],
                     "count"))
        pool.append(("How many citizens of %s are there?" % c["name"],
                     QALD_PREAMBLE + "SELECT (COUNT(?person) AS ?count) WHERE { ?person wdt:P27 wd:%s . }" % c["q"],
                     "count"))
        pool.append(("What is the population of %s?" % c["name"],
                     QALD_PREAMBLE + "SELECT ?population WHERE { wd:%s wdt:P1082 ?population . }" % c["q"], "plain"))
        for q, label in OCCUPATIONS[:2]:
            pool.append(("Which %ss are citizens of %s?" % (label, c["name"]),
                         QALD_PREAMBLE + "SELECT ?person WHERE { ?person wdt:P27 wd:%s . ?person wdt:P106 wd:%s . }"
                         % (c["q"], q), "plain"))
    for p in people[:8]:
        pool.append(("Is %s a %s?" % (p["name"], p["occ"][1]),
                     QALD_PREAMBLE + "ASK WHERE { wd:%s wdt:P106 wd:%s . }" % (p["q"], p["occ"][0]), "ask"))
    for c in cities[:12]:
        pool.append(("Which people were born in %s or hold its country's citizenship?" % c["name"],
                     QALD_PREAMBLE + "SELECT ?person WHERE { { ?person wdt:P19 wd:%s . } UNION "
                     "{ ?person wdt:P27 wd:%s . } }" % (c["q"], c["country"]["q"]), "unsupported"))
    return pool


def qald(world):
    countries, cities, people = world
    pool = qald_records(world)
    graph = qald_graph(world)
    assert len(pool) >= 394, len(pool)
    # Keep every unsupported query and fill the rest in pool order.
    unsupported = [e for e in pool if e[2] == "unsupported"]
    others = [e for e in pool if e[2] != "unsupported"]
    pool = others[:394 - len(unsupported)] + unsupported
    ids = ["qald-%04d" % (i + 1) for i in range(394)]
    records = []
    for rid, (q, query, kind) in zip(ids, pool):
        r = {"id": rid, "split": "test", "question": q, "query": query}
        if kind == "unsupported":
            r["unsupported"] = True
        records.append(r)

    # Nonempty gold answers are guaranteed for plain lookups (every property is
    # asserted) and for counts over populated groups; filter the rest.
    born_in = {}
    for p in people:
        born_in.setdefault(p["born"]["q"], []).append(p)
    def nonempty(rec, kind):
        if kind in ("unsupported", "ask"):
            return False
        if "wdt:P19 wd:" in rec["query"] and "?person wdt:P19" in rec["query"]:
            q = rec["query"].split("wdt:P19 wd:")[1].split(" ")[0]
            return q in born_in
        if "wdt:P106 wd:" in rec["query"] and "?person wdt:P27" in rec["query"]:
            cq = rec["query"].split("wdt:P27 wd:")[1].split(" ")[0]
            oq = rec["query"].split("wdt:P106 wd:")[1].split(" ")[0]
            return any(p["citizen"]["q"] == cq and p["occ"][0] == oq for p in people)
        return True

    kinds = {rid: kind for rid, (_, _, kind) in zip(ids, pool)}
    eligible = [r for r in records if nonempty(r, kinds[r["id"]])]
    rng = random.Random(104)
    executed = rng.sample(eligible, 104)
    # Swapping the entity of a COUNT gold would yield a zero count, so the
    # empty-result group draws from the other shapes first.
    executed.sort(key=lambda r: (kinds[r["id"]] == "count", r["id"]))
    empty_ids = {r["id"] for r in executed[:51]}
    assert not any(kinds[i] == "count" for i in empty_ids)
    count_ids = {r["id"] for r in executed[51:101]}
    wrong_ids = {r["id"] for r in executed[101:]}

    transcript = []
    expected = {"EmptyMismatch": 0, "CountZeroOnEmpty": 0, "WrongBindings": 0, "ParseError": 0,
                "UnsupportedFeature": 0}
    missing = 9000000
    for i, r in enumerate(records):
        rid = r["id"]
        body = r["query"][len(QALD_PREAMBLE):]
        if rid in empty_ids:
            missing += 1
            # Right shape, wrong entity id.
            query = QALD_PREAMBLE + re.sub(r"wd:Q\d+", "wd:Q%d" % missing, body, count=1)
            expected["EmptyMismatch"] += 1
        elif rid in count_ids:
            missing += 1
            query = QALD_PREAMBLE + "SELECT (COUNT(?x) AS ?count) WHERE { wd:Q%d wdt:P166 ?x . }" % missing
            expected["CountZeroOnEmpty"] += 1
        elif rid in wrong_ids:
            other = people[(i * 7) % len(people)]
            query = QALD_PREAMBLE + "SELECT ?label WHERE { wd:%s rdfs:label ?label . }" % other["q"]
            query = "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#> " + query
            expected["WrongBindings"] += 1
        else:
            mode = i % 4
            if mode == 0:
                query = body  # prefixes left out
                # The UNION is rejected before the undeclared prefix is reached.
                expected["UnsupportedFeature" if kinds[rid] == "unsupported" else "ParseError"] += 1
            elif mode == 1:
                query = QALD_PREAMBLE + body[: max(10, len(body) // 2)]
                expected["ParseError"] += 1
            elif mode == 2:
                query = QALD_PREAMBLE + "SELECT ?x WHERE { wd:Q5 wdt:P31/wdt:P279* ?x . }"
                expected["UnsupportedFeature"] += 1
            else:
                query = r["question"]
                expected["ParseError"] += 1
        transcript.append({"id": rid, "query": query})
    expected["Correct"] = 0
    expected["total"] = len(records)
    return records, graph, transcript, expected


# ---------------------------------------------------------------- orga transcript

def orga_transcript(records):
    """A recorded two-checkpoint session with known correctness per epoch."""
    test = sorted((r for r in records if r["split"] == "test"), key=lambda r: r["id"])
    rows = []
    correct = {5: 0, 10: 0}
    for i, r in enumerate(test):
        for epoch in (5, 10):
            right = (i % 3 != 0) if epoch == 5 else (i % 4 != 0)
            if r["question"] == "What is the surname of Bob Tanner?":
                right = epoch == 10
            if right:
                q = r["query"].replace("?", "?v_") if i % 2 else r["query"]
                correct[epoch] += 1
            elif r["question"] == "What is the surname of Bob Tanner?":
                q = "SELECT ?surname WHERE { :charles foaf:firstName 'BobTanner' }"
            elif i % 2:
                q = r["query"].replace("SELECT", "SELEC")
            else:
                q = "SELECT ?x WHERE { :nobody foaf:surname ?x . }"
            rows.append({"id": r["id"], "epoch": epoch, "query": q})
    return rows, correct


def main():
    write(os.path.join(DATA, "orga", "graph.ttl"), orga_graph())
    orga = orga_records()
    write(os.path.join(DATA, "orga", "manifest.json"),
          manifest("orga", "ambient-prefixes", ORGA_PREFIXES, "graph.ttl", orga))
    rows, correct = orga_transcript(orga)
    write(os.path.join(DATA, "orga", "transcripts", "BART-L.ndjson"), ndjson(rows))
    write(os.path.join(DATA, "orga", "transcripts", "BART-L.expected.json"),
          json.dumps({"correct_by_epoch": {str(k): v for k, v in correct.items()}}, indent=2) + "\n")

    write(os.path.join(DATA, "coypu", "graph.ttl"), coypu_graph())
    write(os.path.join(DATA, "coypu", "manifest.json"),
          manifest("coypu", "ambient-prefixes", COYPU_PREFIXES, "graph.ttl", coypu_records()))

    world = qald_world()
    records, graph, transcript, expected = qald(world)
    write(os.path.join(DATA, "qald10", "graph.ttl"), graph)
    write(os.path.join(DATA, "qald10", "manifest.json"),
          manifest("qald10", "self-contained", {}, "graph.ttl", records))
    write(os.path.join(DATA, "qald10", "transcripts", "M2M100.ndjson"), ndjson(transcript))
    write(os.path.join(DATA, "qald10", "transcripts", "M2M100.expected.json"), json.dumps(expected, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
