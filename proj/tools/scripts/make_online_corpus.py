"""Writes the synthetic stand-in for the scraped online corpus."""
import csv
import random
import sys

BURNOUT_OPENERS = [
    "Seit Wochen", "Jeden Morgen", "Inzwischen", "Schon wieder", "Eigentlich",
    "Im Moment", "Nach der Arbeit", "Am Wochenende",
]
BURNOUT_BODIES = [
    "fühle ich mich völlig ausgebrannt",
    "kann ich mich zu nichts mehr aufraffen",
    "ist mir meine Arbeit einfach egal",
    "schlafe ich schlecht und grüble ständig",
    "habe ich keine Kraft mehr für meine Familie",
    "fühle ich mich leer und erschöpft",
    "reagiere ich gereizt auf jede Kleinigkeit",
    "frage ich mich wozu ich das alles mache",
    "habe ich Kopfschmerzen und Herzrasen",
    "zähle ich nur noch die Stunden bis Feierabend",
]
CONTROL_OPENERS = [
    "Seit Wochen", "Jeden Morgen", "Inzwischen", "Heute", "Eigentlich",
    "Im Moment", "Nach der Arbeit", "Am Wochenende",
]
CONTROL_BODIES = [
    "freue ich mich auf meine Kollegen",
    "gehe ich gern zur Arbeit",
    "fühle ich mich ausgeruht und entspannt",
    "habe ich viel Energie für neue Projekte",
    "schlafe ich gut und wache erholt auf",
    "macht mir mein Beruf richtig Spaß",
    "nehme ich mir Zeit für Sport und Freunde",
    "bin ich zufrieden mit meinem Alltag",
]


def main(path):
    rng = random.Random(20240101)
    rows = []
    for opener in BURNOUT_OPENERS:
        for body in BURNOUT_BODIES:
            rows.append((f"{opener} {body}.", 1))
    for opener in CONTROL_OPENERS:
        for body in CONTROL_BODIES:
            rows.append((f"{opener} {body}.", 0))
    rng.shuffle(rows)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, delimiter="\t", lineterminator="\n")
        writer.writerow(["text", "label"])
        writer.writerows(rows)


if __name__ == "__main__":
    main(sys.argv[1])
