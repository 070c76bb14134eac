#!/usr/bin/env python3
"""Regenerates data/segment_lexicon.tsv.

The build environment ships no word-frequency corpus, so the lexicon is
synthesized: a curated base list ordered by rough frequency band, expanded
with regular inflections, with Zipf-shaped counts assigned by rank. That is
plenty for splitting concatenated hashtags, which is all it is used for.
"""

import sys

# Grammar/function words. Highest ranks, never inflected.
FUNCTION_WORDS = """
the of and a to in is you that it he was for on are as with his they i at
be this have from or one had by word but not what all were we when your can
said there use an each which she do how their if will up other about out
many then them these so some her would make like him into time has look two
more write go see no way could people my than first been call who its now
find long down day did get come made may part over new sound take only
little work know place year live me back give most very after thing our
just name good man think say great where help through much before line
right too mean old any same tell boy follow came want show also around
form three small set put end does another well large must big even such
because turn here why ask went men read need land different home us move
try kind hand picture again change off play spell air away animal house
point page letter mother answer found study still learn should world high
every near add food between own below country plant last school father keep
tree never start city earth eye light thought head under story saw left
dont few while along might close something seem next hard open example
begin life always those both paper together got group often run important
until children side feet car mile night walk white sea began grow took
river four carry state once book hear
""".split()

# Everyday content words, roughly by frequency.
COMMON_WORDS = """
stop music question fish area mark dog horse bird problem complete room
knew since ever piece told usually easy heard order red door sure become
top ship across today during short better best however low hour black
product happened whole measure remember early wave reached listen wind
rock space covered fast several hold himself toward five step morning
passed vowel true hundred against pattern numeral table north slowly money
map farm pulled draw voice seen cold cried plan notice south sing war
ground fall king town unit figure certain field travel wood fire upon
done english road half ten fly gave box finally wait correct oh quickly
person became shown minute strong verb star front feel fact inch multiply
nothing course stay wheel full force blue object decide surface deep moon
island foot system busy test record boat common gold possible plane stead
dry wonder laugh thousand ago ran check game shape equate hot miss brought
heat snow tire bring yes distant fill east paint language among grand ball
yet wave drop heart am present heavy dance engine position arm wide sail
material size vary settle speak weight general ice matter circle pair
include divide syllable felt perhaps pick sudden count square reason
length represent art subject region energy hunt probable bed brother egg
ride cell believe fraction forest sit race window store summer train sleep
prove lone leg exercise wall catch mount wish sky board joy winter sat
written wild instrument kept glass grass cow job edge sign visit past soft
fun bright gas weather month million bear finish happy hope flower clothe
strange gone jump baby eight village meet root buy raise solve metal
whether push seven paragraph third shall held hair describe cook floor
either result burn hill safe cat century consider type law bit coast copy
phrase silent tall sand soil roll temperature finger industry value fight
lie beat excite natural view sense ear else quite broke case middle kill
son lake moment scale loud spring observe child straight consonant nation
dictionary milk speed method organ pay age section dress cloud surprise
quiet stone tiny climb cool design lot experiment bottom key iron single
stick flat twenty skin smile crease hole trade melody trip office receive
row mouth exact symbol die least trouble shout except wrote seed tone join
suggest clean break lady yard rise bad blow oil blood touch grew cent mix
team wire cost lost brown wear garden equal sent choose fell fit flow fair
bank collect save control decimal gentle woman captain practice separate
difficult doctor please protect noon whose locate ring character insect
caught period indicate radio spoke atom human history effect electric
expect crop modern element hit student corner party supply bone rail
imagine provide agree thus capital wont chair danger fruit rich thick
soldier process operate guess necessary sharp wing create neighbor wash
bat rather crowd corn compare poem string bell depend meat rub tube famous
dollar stream fear sight thin triangle planet hurry chief colony clock
mine tie enter major fresh search send yellow gun allow print dead spot
desert suit current lift rose continue block chart hat sell success
company subtract event particular deal swim term opposite wife shoe
shoulder spread arrange camp invent cotton born determine quart nine
truck noise level chance gather shop stretch throw shine property column
molecule select wrong gray repeat require broad prepare salt nose plural
anger claim continent oxygen sugar death pretty skill women season
solution magnet silver thank branch match suffix especially afraid
sister steel discuss forward similar guide experience score apple bought
led pitch coat mass card band rope slip win dream evening condition feed
tool total basic smell valley nor double seat arrive master track parent
shore division sheet substance favor connect post spend chord fat glad
original share station dad bread charge proper bar offer segment slave
duck instant market degree populate chick dear enemy reply drink occur
support speech nature range steam motion path liquid log meant quotient
teeth shell neck
""".split()

# Social media and news-cycle vocabulary.
DOMAIN_WORDS = """
love hate like feel nice cool awesome amazing terrible horrible awful
stupid crazy dumb smart beautiful ugly real fake true false lose loser
winner fail epic insane ridiculous pathetic disgusting gross weird lame
boring sick wow yeah yep nope okay ok please sorry thanks thank welcome
bye hello hey dude bro man girl guy folks friend friends family mom dad
kids boys girls trump obama hillary clinton biden bernie sanders pelosi
pence kavanaugh mueller comey putin russia china america american
americans democrat democrats republican republicans liberal liberals
conservative conservatives progressive progressives socialist socialists
communist communists fascist fascists patriot patriots leftist leftists
media news fox cnn maga gop potus scotus flotus antifa blm brexit vote
voter voters election elections campaign president senate congress house
court judge justice bill policy policies government politics political
politician politicians freedom liberty constitution amendment gun guns
border wall immigration immigrant immigrants illegal illegals refugee
refugees muslim muslims christian christians jewish israel iran iraq
syria ukraine mexico canada europe european union tax taxes job jobs
economy trade military veteran veterans police cop cops crime criminal
criminals prison jail corrupt corruption scandal impeach impeachment
collusion obstruction swamp drain dark racist racism sexist sexism bigot
bigots hatred violence protest protests riot riots march rally resist
resistance woke snowflake libtard cuck twitter facebook instagram youtube
tweet tweets retweet hashtag follower followers trending viral meme memes
troll trolls bot bots blocked banned censorship speech lol omg wtf lmao
smh tbh idk btw yolo selfie bae goat slay lit salty shade ghosted
benghazi haiti uranium sierra burgess janani boss liar liars kookoo
obamacare healthcare abortion climate science hoax witch fraud rigged
deplorable deplorables globalist globalists elite elites establishment
mainstream propaganda narrative agenda radical radicals extremist
extremists terrorism terrorist terrorists nazi nazis supremacist
supremacists antisemitism islamophobia homophobia transgender gay
lesbian pride rights equality diversity inclusion privilege oppression
victim victims blame shame cancel cancelled culture generation boomer
millennial millennials
""".split()

# Real one- and two-letter words only; everything else this short is noise.
SHORT_WORDS = set(
    "a i am an as at be by do go he hi if in is it me my no of oh ok on or "
    "so to up us we".split()
)

SUFFIX_DIVISORS = {"s": 12, "ing": 20, "ed": 25, "er": 30, "ly": 40}


def inflections(word: str):
    if word.endswith(("s", "x", "z", "ch", "sh")):
        plural = word + "es"
    elif word.endswith("y") and len(word) > 2 and word[-2] not in "aeiou":
        plural = word[:-1] + "ies"
    else:
        plural = word + "s"
    yield plural, "s"

    stem = word[:-1] if word.endswith("e") else word
    yield stem + "ing", "ing"

    if word.endswith("e"):
        past = word + "d"
    elif word.endswith("y") and len(word) > 2 and word[-2] not in "aeiou":
        past = word[:-1] + "ied"
    else:
        past = word + "ed"
    yield past, "ed"

    yield (word + "r") if word.endswith("e") else (word + "er"), "er"

    if word.endswith("y") and len(word) > 2 and word[-2] not in "aeiou":
        yield word[:-1] + "ily", "ly"
    else:
        yield word + "ly", "ly"


def main() -> int:
    base = []
    seen = set()
    for word in FUNCTION_WORDS + COMMON_WORDS + DOMAIN_WORDS:
        if len(word) < 3 and word not in SHORT_WORDS:
            continue
        if word not in seen:
            seen.add(word)
            base.append(word)

    counts = {}
    for rank, word in enumerate(base, start=1):
        counts[word] = max(1, int(4e7 / rank**1.05))

    n_function = len([w for w in FUNCTION_WORDS if w in counts])
    for word in base[n_function:]:
        if len(word) < 3:
            continue
        for form, suffix in inflections(word):
            derived = max(1, counts[word] // SUFFIX_DIVISORS[suffix])
            if form not in counts:
                counts[form] = derived

    out = sys.argv[1] if len(sys.argv) > 1 else "data/segment_lexicon.tsv"
    with open(out, "w", encoding="utf-8") as fh:
        for word in sorted(counts, key=lambda w: (-counts[w], w)):
            fh.write(f"{word}\t{counts[word]}\n")
    print(f"wrote {len(counts)} entries to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
