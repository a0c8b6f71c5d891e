"""Writes the base WordPiece vocabulary used for scratch encoders."""
import string
import sys

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
LETTERS = string.ascii_letters + "äöüÄÖÜß"
DIGITS = string.digits
PUNCT = [c for c in string.punctuation] + ["„", "“", "”", "‚", "‘", "’", "–",
                                           "—", "…", "«", "»", "€", "§", "°"]
SUFFIXES = """
en er ern es em et est st t te ten tet e n s ung ungen lich liche lichen
licher keit keiten heit heiten isch ische ischen schaft schaften chen bar
los lose losen ig ige igen iger sam ierung ieren iert ie ion ionen tion
tionen ität nis nisse end ende enden al ale alen ell elle ellen ei eit
""".split()
WORDS = """
der die das den dem des ein eine einen einem einer eines kein keine keinen
ich du er sie es wir ihr mich mir mein meine meinen meinem meiner dich dir
sich uns euch ihn ihm ihnen man jemand niemand alle alles nichts etwas
und oder aber denn sondern weil dass ob wenn als wie so auch nur noch schon
doch mal eben ja nein nicht nie immer oft manchmal selten wieder jetzt
heute morgen gestern bald früher später dann da dort hier hin her
in im ins an am auf aus bei mit nach von vom zu zum zur über unter vor
hinter neben zwischen durch für gegen ohne um bis seit während trotz
bin bist ist sind seid war waren gewesen sein habe hast hat haben hatte
hatten gehabt werde wirst wird werden wurde wurden geworden kann kannst
können konnte konnten muss musst müssen musste will willst wollen wollte
soll sollen sollte darf dürfen möchte möchten mag mögen würde würden
gehen geht ging kommen kommt kam machen macht machte sagen sagt sagte
sehen sieht sah denken denkt dachte fühlen fühle fühlt fühlte wissen weiß
finden finde findet glauben glaube arbeiten arbeite arbeitet schlafen
schlafe schläft essen trinken lachen weinen reden sprechen hören spüren
spüre merken merke bleiben bleibt leben lebe brauchen brauche geben gibt
nehmen nimmt halten hält schaffen schaffe helfen hilft freuen freue
Arbeit Beruf Job Chef Chefin Kollegen Kollegin Kollege Team Büro Firma
Tag Tage Woche Wochen Monat Monate Jahr Jahre Zeit Stunde Stunden Abend
Morgen Nacht Wochenende Urlaub Pause Feierabend Alltag Leben Familie
Freunde Freund Freundin Kinder Kind Partner Partnerin Mann Frau Mensch
Menschen Kopf Herz Körper Magen Rücken Schlaf Energie Kraft Stress Druck
Angst Sorge Sorgen Freude Spaß Ruhe Gefühl Gefühle Gedanken Sinn Ziel
Aufgabe Aufgaben Projekt Projekte Termin Termine Verantwortung Erfolg
Problem Probleme Gesundheit Arzt Ärztin Krankheit Schmerzen Hilfe
gut schlecht besser schlechter sehr viel viele wenig wenige mehr weniger
ganz gar zu total völlig ziemlich etwas kaum fast genau einfach richtig
müde erschöpft leer ausgebrannt gestresst traurig glücklich zufrieden
froh ruhig entspannt gesund krank stark schwach wach frisch neu alt
lang kurz groß klein schwer leicht schnell langsam früh spät eigentlich
wirklich gerade letzten letzte letzter nächste nächsten jeden jede jeder
ständig dauernd kaum ehrlich sofort besonders deutlich aktuell gern gerne
Ich Du Er Sie Es Wir Ihr Mein Meine Der Die Das Ein Eine Und Aber Wenn
Seit Am Im In Auf Bei Nach Vor Heute Jeden Manchmal Oft Immer Nie Auch
Wer Was Wie Warum Wo Wann So Da Dann Morgens Abends Eigentlich Schon
""".split()


def main(path):
    vocab = []
    seen = set()

    def add(token):
        if token not in seen:
            seen.add(token)
            vocab.append(token)

    for token in SPECIALS:
        add(token)
    for c in LETTERS + DIGITS:
        add(c)
    for c in PUNCT:
        add(c)
    for c in LETTERS + DIGITS:
        add("##" + c)
    for suffix in SUFFIXES:
        add("##" + suffix)
    for word in WORDS:
        add(word)
    with open(path, "w", encoding="utf-8") as f:
        for token in vocab:
            f.write(token + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
