"""Writes the 17-respondent survey fixture used by tests and the demo.

Coded item values are chosen so the respondents fall into four score
groups; raw answers are derived from the keying in data/olbi_items.json.
"""
import json
import sys

# (count, exhaustion coded values, disengagement coded values, answer style)
GROUPS = [
    (2, [3] * 8, [3] * 6 + [2] * 2, "high"),          # E 3.00, D 2.75, 46
    (2, [2] * 4 + [3] * 4, [2] * 6 + [3] * 2, "mid"),  # E 2.50, D 2.25, 38
    (3, [3] * 8, [1] * 4 + [2] * 4, "tired"),          # E 3.00, D 1.50, 36
    (10, [2] * 8, [2] * 8, "fine"),                    # E 2.00, D 2.00, 32
]

ANSWERS = {
    "high": [
        ["Ich komme morgens kaum aus dem Bett und bin den ganzen Tag erschöpft.",
         "Meine Arbeit fühlt sich sinnlos an und ich funktioniere nur noch.",
         "Am Wochenende liege ich meistens nur auf dem Sofa.",
         "Ich wünsche mir, dass jemand merkt, wie leer ich mich fühle."],
        ["Der Tag beginnt mit Kopfschmerzen und endet mit Grübeln.",
         "Kollegen gehen mir nur noch auf die Nerven.",
         "Ich schlafe schlecht und wache oft nachts auf.",
         "Ich habe das Gefühl, völlig ausgebrannt zu sein."],
    ],
    "mid": [
        ["Meistens stressig, ich hetze von Termin zu Termin.",
         "Ich bin oft gereizt, wenn etwas nicht klappt.",
         "Abends bin ich müde, aber es geht noch.",
         ""],
        ["Viel Arbeit und wenig Pausen, danach bin ich platt.",
         "Manchmal frage ich mich, wofür ich das alles mache.",
         "Sport schaffe ich kaum noch.",
         "Es ist gerade eine anstrengende Phase."],
    ],
    "tired": [
        ["Lange Schichten, danach bin ich körperlich am Ende.",
         "Die Arbeit macht mir eigentlich Spaß.",
         "Ich brauche viel Schlaf, um mich zu erholen.",
         "Ich mag mein Team sehr."],
        ["Sehr voll, aber die Aufgaben sind spannend.",
         "Ich bin abends erschöpft, aber zufrieden.",
         "Mir fehlt manchmal die Energie für Hobbys.",
         "Mein Beruf ist mir wichtig."],
        ["Ich arbeite viel und bin oft müde.",
         "Trotzdem gehe ich gerne zur Arbeit.",
         "Am Wochenende muss ich mich ausruhen.",
         ""],
    ],
    "fine": [
        ["Ein normaler Tag mit Besprechungen und etwas Routine.",
         "Ich gehe gern zur Arbeit und treffe meine Kollegen.",
         "Nach Feierabend mache ich Sport oder treffe Freunde.",
         "Alles in allem bin ich zufrieden."],
        ["Ich beginne früh und habe nachmittags Zeit für die Familie.",
         "Meine Aufgaben sind abwechslungsreich.",
         "Ich schlafe gut und fühle mich erholt.",
         "Nichts Besonderes, es läuft gut."],
        ["Der Tag ist gut strukturiert und ruhig.",
         "Mein Chef unterstützt mich bei neuen Projekten.",
         "Ich habe genug Energie für meine Hobbys.",
         "Ich freue mich auf den nächsten Urlaub."],
        ["Viel Kontakt mit Kunden, das macht mir Spaß.",
         "Ich fühle mich im Team wohl.",
         "Abends lese ich oder gehe spazieren.",
         "Mir geht es im Moment gut."],
        ["Morgens Büro, nachmittags Homeoffice.",
         "Ich kann mir meine Zeit gut einteilen.",
         "Ich bin entspannt und ausgeglichen.",
         "Keine besonderen Anmerkungen von mir."],
        ["Ich arbeite in Teilzeit und habe einen festen Rhythmus.",
         "Die Arbeit ist fordernd, aber machbar.",
         "Ich habe Zeit für meine Kinder.",
         "Ich fühle mich gesund und motiviert."],
        ["Meist ruhig, manchmal ein bisschen hektisch.",
         "Ich mag, was ich tue.",
         "Ich schlafe ausreichend und bin fit.",
         "Danke für die Umfrage."],
        ["Ein typischer Tag beginnt mit Kaffee und E-Mails.",
         "Ich bin stolz auf meine Arbeit.",
         "Die Wochenenden verbringe ich draußen.",
         "Mir geht es gut, wirklich."],
        ["Viele kleine Aufgaben, aber gut zu schaffen.",
         "Meine Kollegen sind hilfsbereit.",
         "Ich habe genug Freizeit.",
         "Ich bin zufrieden mit meiner Situation."],
        ["Ich unterrichte vormittags und korrigiere nachmittags.",
         "Der Beruf erfüllt mich.",
         "Ich treffe mich oft mit Freunden.",
         "Alles bestens soweit."],
    ],
}


def main(items_path, out_path):
    with open(items_path, encoding="utf-8") as f:
        items = json.load(f)["items"]
    by_dimension = {"exhaustion": [], "disengagement": []}
    for item in items:
        by_dimension[item["dimension"]].append(item)
    rows = []
    index = 0
    for count, exhaustion, disengagement, style in GROUPS:
        for k in range(count):
            index += 1
            answers = {}
            for dimension, coded in (("exhaustion", exhaustion),
                                     ("disengagement", disengagement)):
                for item, value in zip(by_dimension[dimension], coded):
                    raw = 5 - value if item["transform"] == "reverse" else value
                    answers[str(item["id"])] = raw
            texts = ANSWERS[style][k]
            rows.append({
                "respondent_id": f"fixture-{index:02d}",
                "answers": {f"Q{q + 1}": texts[q] for q in range(4)},
                "olbi": dict(sorted(answers.items(), key=lambda kv: int(kv[0]))),
                "age": 25 + index,
                "gender": "unspecified",
            })
    with open(out_path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
