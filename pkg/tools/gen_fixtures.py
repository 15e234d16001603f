#!/usr/bin/env python3
"""Regenerate the bundled fixture data under data/.

Everything is synthetic and deterministic (fixed seed). The corpus is a
two-topic text: sentences draw their content words from exactly one of two
disjoint pools, with a shared function-word sprinkle, so embedding models
trained on it must separate the topics. Province anchor sentences tie each
province name to its (invented) dialect words, and template sentences embed
every analogy tuple so the relation benchmark has in-vocabulary questions.

Run from the repository root:  python3 tools/gen_fixtures.py
"""

import json
import random
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"
SEED = 20240711

FUNCTION_WORDS = [
    "de", "het", "een", "en", "van", "in", "op", "met", "voor", "aan",
    "bij", "naar", "uit", "over", "dat", "is", "zijn", "was", "ook", "u",
]

TOPIC_A_PROBES = [
    "fiets", "gracht", "molen", "tulp", "schaats",
    "polder", "dijk", "haring", "klomp", "drop",
]
TOPIC_A_SUPPORT = [
    "kanaal", "brug", "sluis", "rivier", "meer", "strand", "duin", "regen",
    "wind", "storm", "wolk", "koe", "schaap", "boerderij", "melk", "boter",
    "kaas", "stroopwafel", "oranje", "schaatsen", "winter", "ijs", "sneeuw",
    "veerpont", "weiland", "bollenveld", "zeilboot", "haven", "vuurtoren",
    "eb", "vloed", "kade", "windmolen", "klompendans", "marktdag", "grachtje",
    "fietser", "fietspad", "stolp", "terp", "wierde", "gemaal", "boezem",
    "uiterwaard", "griend", "wilg", "knotwilg", "reiger", "fuut", "grutto",
    "kievit", "scholekster", "wadden", "slik", "kwelder", "zeehond", "garnalenkot",
    "botter", "tjalk", "praam", "helling", "werf", "touwslager", "zeilmaker",
    "kaasmarkt", "waag", "grachtenpand", "trapgevel", "hofje", "plantsoen",
    "singel", "bolwerk", "stadswal", "poldermolen", "boezemwater", "veenweide",
]

TOPIC_B_PROBES = [
    "friet", "pintje", "wafel", "mossel", "kermis",
    "frituur", "praline", "hesp", "plezant", "terrasje",
]
TOPIC_B_SUPPORT = [
    "brouwerij", "abdij", "trappist", "chocolade", "speculaas", "stoofvlees",
    "garnaal", "kust", "tram", "belfort", "kasteel", "processie", "fanfare",
    "volksfeest", "cafeetje", "marktplein", "gilde", "carnaval", "stoet",
    "reus", "draak", "kathedraal", "begijnhof", "kasseien", "koers",
    "wielrenner", "flandrien", "kermiskoers", "frietkot", "jenever", "bolleke",
    "gueuze", "lambiek", "kriek", "blondje", "tripel", "dubbel", "kroegbaas",
    "tooghanger", "ambiance", "fuif", "koterij", "koterke", "gevelrij",
    "steegje", "vestingmuur", "schepenhuis", "lakenhal", "vismijn", "reder",
    "sloep", "kotter", "strandcabine", "duinweg", "polderdorp", "kermistent",
    "schietkraam", "paardenmolen", "suikerspin", "smoutebol", "oliebol",
    "wafelijzer", "chocolatier", "pralinedoos", "biergilde", "hopveld", "brouwketel",
]

TOPIC_A_SYLLABLES = [
    "vaar", "dorp", "wiek", "gras", "veen", "zand", "sloot", "riet",
    "boot", "wind", "water", "dijk", "wei", "koe", "vis", "zeil",
    "schuur", "akker", "gors", "bies",
]
TOPIC_B_SYLLABLES = [
    "brouw", "gast", "toren", "gilde", "koers", "markt", "bier", "feest",
    "kraam", "stoet", "hop", "mout", "kei", "vest", "hal", "schans",
    "spel", "dans", "zang", "ommegang",
]


def tail_words(syllables, count):
    """Deterministic long-tail pseudo-words from two topic syllables."""
    words = []
    for first in syllables:
        for second in syllables:
            if first != second:
                words.append(first + second)
                if len(words) == count:
                    return words
    return words


TOPIC_A_TAIL = tail_words(TOPIC_A_SYLLABLES, 300)
TOPIC_B_TAIL = tail_words(TOPIC_B_SYLLABLES, 300)

DUTCH_PROVINCES = [
    "drenthe", "flevoland", "friesland", "gelderland", "groningen", "limburg",
    "noord-brabant", "noord-holland", "overijssel", "utrecht", "zeeland",
    "zuid-holland",
]
FLEMISH_PROVINCES = [
    "antwerpen", "oost-vlaanderen", "west-vlaanderen", "vlaams-brabant",
]
PROVINCES = DUTCH_PROVINCES + FLEMISH_PROVINCES
COUNTRIES = ["nederland", "belgië"]

# three invented dialect words per province, plus deliberate junk entries
# (cross-province duplicates and standard-language words) that the
# deduplication rules must remove
DIALECT_WORDS = {
    "drenthe": ["kniepertie", "moespot", "bargbloem"],
    "flevoland": ["polderknar", "dijkloper", "nieuwgrond"],
    "friesland": ["heitelan", "skutsje", "fierljep"],
    "gelderland": ["achterhoeks", "spekkedik", "veluwnar"],
    "groningen": ["knoalster", "siepel", "grunneger"],
    "limburg": ["sjoen", "vlaai", "kirmes"],
    "noord-brabant": ["worstenbrood", "houdoe", "kwats"],
    "noord-holland": ["skuit", "jordanees", "pierewaai"],
    "overijssel": ["tukker", "knieperke", "sallands"],
    "utrecht": ["grift", "domstadje", "utregs"],
    "zeeland": ["babbelaar", "zeeuwse", "bolus"],
    "zuid-holland": ["haags", "kakkerlakkie", "duinpan"],
    "antwerpen": ["pagadder", "sinjoor", "bolhoed"],
    "oost-vlaanderen": ["ajuin", "stroppendrager", "gentenaar"],
    "west-vlaanderen": ["zunne", "vintje", "stuten"],
    "vlaams-brabant": ["pajot", "geuze", "kriekske"],
}
DIALECT_JUNK = [
    ("groningen", "proaten"),       # also under drenthe: cross-dialect duplicate
    ("drenthe", "proaten"),
    ("limburg", "vlaai"),           # duplicate entry inside one province (idempotent)
    ("antwerpen", "lekker"),        # standard word: must be deleted from the dialect
]

STANDARD_WORDS = FUNCTION_WORDS + [
    "lekker", "mooi", "groot", "klein", "huis", "water", "brood", "goed",
    "slecht", "vandaag", "morgen", "gisteren", "altijd", "nooit", "veel",
    "weinig", "mensen", "stad", "dorp", "straat", "eten", "drinken",
]

ANALOGIES = {
    # (category name, kind): list of (left, right)
    ("verkleinwoorden", "syntactic"): [
        ("huis", "huisje"), ("boom", "boompje"), ("kat", "katje"),
        ("hond", "hondje"), ("boek", "boekje"), ("tafel", "tafeltje"),
        ("stoel", "stoeltje"), ("auto", "autootje"), ("brood", "broodje"),
        ("glas", "glaasje"), ("vogel", "vogeltje"), ("ster", "sterretje"),
        ("lamp", "lampje"), ("vis", "visje"),
    ],
    ("meervoud", "syntactic"): [
        ("huis", "huizen"), ("boek", "boeken"), ("kat", "katten"),
        ("hond", "honden"), ("stad", "steden"), ("kind", "kinderen"),
        ("man", "mannen"), ("vrouw", "vrouwen"), ("schip", "schepen"),
        ("ei", "eieren"), ("boom", "bomen"), ("stoel", "stoelen"),
        ("tafel", "tafels"), ("vogel", "vogels"),
    ],
    ("verleden-tijd", "syntactic"): [
        ("werken", "werkte"), ("spelen", "speelde"), ("lopen", "liep"),
        ("eten", "at"), ("drinken", "dronk"), ("zien", "zag"),
        ("gaan", "ging"), ("komen", "kwam"), ("maken", "maakte"),
        ("horen", "hoorde"), ("vragen", "vroeg"), ("geven", "gaf"),
        ("nemen", "nam"), ("kopen", "kocht"),
    ],
    ("vergrotende-trap", "syntactic"): [
        ("groot", "groter"), ("klein", "kleiner"), ("snel", "sneller"),
        ("mooi", "mooier"), ("sterk", "sterker"), ("oud", "ouder"),
        ("jong", "jonger"), ("hoog", "hoger"), ("laag", "lager"),
        ("warm", "warmer"), ("koud", "kouder"), ("lang", "langer"),
    ],
    ("overtreffende-trap", "syntactic"): [
        ("groot", "grootst"), ("klein", "kleinst"), ("snel", "snelst"),
        ("mooi", "mooist"), ("sterk", "sterkst"), ("oud", "oudst"),
        ("jong", "jongst"), ("hoog", "hoogst"), ("laag", "laagst"),
        ("warm", "warmst"), ("koud", "koudst"), ("lang", "langst"),
    ],
    ("derde-persoon", "syntactic"): [
        ("werken", "werkt"), ("spelen", "speelt"), ("lopen", "loopt"),
        ("eten", "eet"), ("maken", "maakt"), ("horen", "hoort"),
        ("geven", "geeft"), ("nemen", "neemt"), ("kopen", "koopt"),
        ("zien", "ziet"), ("drinken", "drinkt"), ("komen", "komt"),
    ],
    ("geslacht", "semantic"): [
        ("man", "vrouw"), ("koning", "koningin"), ("prins", "prinses"),
        ("vader", "moeder"), ("broer", "zus"), ("oom", "tante"),
        ("zoon", "dochter"), ("heer", "dame"), ("jongen", "meisje"),
        ("acteur", "actrice"), ("stier", "koe"), ("haan", "kip"),
        ("hengst", "merrie"), ("kater", "poes"),
    ],
    ("tegenstellingen", "semantic"): [
        ("groot", "klein"), ("warm", "koud"), ("snel", "langzaam"),
        ("licht", "donker"), ("hoog", "laag"), ("jong", "oud"),
        ("rijk", "arm"), ("sterk", "zwak"), ("vol", "leeg"),
        ("open", "dicht"), ("nat", "droog"), ("zwaar", "licht"),
    ],
    ("hoofdsteden", "semantic"): [
        ("nederland", "amsterdam"), ("belgië", "brussel"),
        ("frankrijk", "parijs"), ("duitsland", "berlijn"),
        ("spanje", "madrid"), ("italië", "rome"), ("portugal", "lissabon"),
        ("oostenrijk", "wenen"), ("polen", "warschau"), ("rusland", "moskou"),
        ("engeland", "londen"), ("griekenland", "athene"),
        ("noorwegen", "oslo"), ("zweden", "stockholm"),
    ],
    ("valuta", "semantic"): [
        ("japan", "yen"), ("rusland", "roebel"), ("engeland", "pond"),
        ("amerika", "dollar"), ("zwitserland", "frank"), ("polen", "zloty"),
        ("zweden", "kroon"), ("india", "roepie"), ("china", "yuan"),
        ("turkije", "lira"),
    ],
    ("nationaliteiten", "semantic"): [
        ("nederland", "nederlander"), ("belgië", "belg"),
        ("frankrijk", "fransman"), ("duitsland", "duitser"),
        ("italië", "italiaan"), ("spanje", "spanjaard"),
        ("portugal", "portugees"), ("polen", "pool"), ("rusland", "rus"),
        ("griekenland", "griek"), ("amerika", "amerikaan"),
        ("engeland", "engelsman"), ("zweden", "zweed"), ("noorwegen", "noor"),
    ],
}

TEMPLATES = {
    "verkleinwoorden": "het {b} is gewoon een heel klein {a}",
    "meervoud": "er staan veel {b} naast dat ene {a}",
    "verleden-tijd": "wij {a} vandaag net zoals hij gisteren {b}",
    "vergrotende-trap": "dit is al {a} maar dat daar is nog {b}",
    "overtreffende-trap": "dit is {a} maar dat daar is het {b}",
    "derde-persoon": "wij {a} samen terwijl hij alleen {b}",
    "geslacht": "de {a} en de {b} wonen samen in de stad",
    "tegenstellingen": "het ene is {a} en het andere is juist {b}",
    "hoofdsteden": "{b} is de hoofdstad van het land {a}",
    "valuta": "de {b} is de munt van het land {a}",
    "nationaliteiten": "een echte {b} komt natuurlijk uit {a}",
}


def topical_sentence(rng, probes, support, tail):
    length = rng.randint(6, 13)
    tokens = []
    for _ in range(length):
        roll = rng.random()
        if roll < 0.20:
            tokens.append(rng.choice(FUNCTION_WORDS))
        elif roll < 0.29:
            tokens.append(rng.choice(probes))
        elif roll < 0.64:
            # mild frequency skew over the support pool
            idx = min(int(rng.expovariate(1.0 / 25.0)), len(support) - 1)
            tokens.append(support[idx])
        else:
            # long zipf-ish tail keeps the vocabulary from being trivial
            idx = min(int(rng.expovariate(1.0 / 60.0)), len(tail) - 1)
            tokens.append(tail[idx])
    return tokens


def anchor_sentence(rng, province, words, support):
    frame = ["in", province, "zegt", "men"]
    frame.append(rng.choice(words))
    frame += ["tegen", rng.choice(support)]
    if rng.random() < 0.5:
        frame += ["en", rng.choice(words)]
    return frame


def country_sentence(rng, country, provinces):
    prov = rng.choice(provinces)
    return ["de", "provincie", prov, "ligt", "in", "het", "land", country]


def build_corpus(rng):
    sentences = []
    # analogy template sentences (4 repetitions per tuple)
    for (name, _kind), tuples in ANALOGIES.items():
        template = TEMPLATES[name]
        for a, b in tuples:
            for _ in range(4):
                sentences.append(template.format(a=a, b=b).split())
    # province anchors: tie each province name to its dialect words
    for province, words in DIALECT_WORDS.items():
        support = TOPIC_A_SUPPORT if province in DUTCH_PROVINCES else TOPIC_B_SUPPORT
        for _ in range(14):
            sentences.append(anchor_sentence(rng, province, words, support))
    for country in COUNTRIES:
        provs = DUTCH_PROVINCES if country == "nederland" else FLEMISH_PROVINCES
        for _ in range(20):
            sentences.append(country_sentence(rng, country, provs))
    # bulk two-topic text
    for _ in range(2300):
        sentences.append(
            topical_sentence(rng, TOPIC_A_PROBES, TOPIC_A_SUPPORT, TOPIC_A_TAIL)
        )
        sentences.append(
            topical_sentence(rng, TOPIC_B_PROBES, TOPIC_B_SUPPORT, TOPIC_B_TAIL)
        )
    # a sprinkle of lines the preprocessor must clean up or drop
    for _ in range(60):
        sentences.append(["Dit", "hier", "!!", "is", "kort"])  # 4 tokens after cleanup: dropped
    for _ in range(40):
        sentences.append(["te", "kort"])
    for _ in range(40):
        tokens = topical_sentence(rng, TOPIC_A_PROBES, TOPIC_A_SUPPORT, TOPIC_A_TAIL)
        tokens.insert(rng.randrange(len(tokens)), "...")
        tokens[0] = tokens[0].capitalize()
        sentences.append(tokens)
    rng.shuffle(sentences)
    return sentences


def post_tokens(rng, province):
    words = DIALECT_WORDS[province]
    probes = TOPIC_A_PROBES if province in DUTCH_PROVINCES else TOPIC_B_PROBES
    support = TOPIC_A_SUPPORT if province in DUTCH_PROVINCES else TOPIC_B_SUPPORT
    tokens = [rng.choice(words), rng.choice(words)]
    tokens += [rng.choice(probes) for _ in range(2)]
    tokens += [rng.choice(support) for _ in range(2)]
    tokens += [rng.choice(FUNCTION_WORDS) for _ in range(2)]
    rng.shuffle(tokens)
    return tokens


def main():
    rng = random.Random(SEED)
    DATA.mkdir(exist_ok=True)

    with open(DATA / "analogies_nl.tsv", "w", encoding="utf-8") as fh:
        for (name, kind), tuples in ANALOGIES.items():
            fh.write(f": {name} {kind}\n")
            for left, right in tuples:
                fh.write(f"{left}\t{right}\n")

    with open(DATA / "provinces.txt", "w", encoding="utf-8") as fh:
        fh.write("# 16 Dutch and Flemish provinces (one name per line, optional aliases)\n")
        for p in PROVINCES:
            fh.write(p + "\n")
        fh.write("[countries]\n")
        for c in COUNTRIES:
            fh.write(c + "\n")

    with open(DATA / "dialect_dict.tsv", "w", encoding="utf-8") as fh:
        for province, words in DIALECT_WORDS.items():
            for w in words:
                fh.write(f"{province}\t{w}\n")
        for province, w in DIALECT_JUNK:
            fh.write(f"{province}\t{w}\n")

    with open(DATA / "standard_nl.txt", "w", encoding="utf-8") as fh:
        for w in STANDARD_WORDS:
            fh.write(w + "\n")

    sentences = build_corpus(rng)
    with open(DATA / "mini_corpus.txt", "w", encoding="utf-8") as fh:
        for tokens in sentences:
            fh.write(" ".join(tokens) + "\n")

    with open(DATA / "dialect_posts.tsv", "w", encoding="utf-8") as fh:
        for province in PROVINCES:
            for _ in range(3):
                fh.write(f"{province}\t{' '.join(post_tokens(rng, province))}\n")

    with open(DATA / "mini_corpus_topics.json", "w", encoding="utf-8") as fh:
        json.dump({"topic_a": TOPIC_A_PROBES, "topic_b": TOPIC_B_PROBES}, fh, indent=2)
        fh.write("\n")

    n_tokens = sum(len(s) for s in sentences)
    print(f"wrote {len(sentences)} sentences, {n_tokens} tokens")


if __name__ == "__main__":
    main()
