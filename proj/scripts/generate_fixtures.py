#!/usr/bin/env python3
"""Regenerate the synthetic corpus and fixtures under data/.

  data/corpus/synthetic_training.tsv    60 labelled documents (30 relevant)
  data/fixtures/replay/                 month of RSS/Atom feeds, 2007-10-12 .. 2007-11-11
  data/fixtures/api/                    small event + story store for the API filter tests

Everything is deterministic; rerunning rewrites identical files. The golden
outputs under tests/golden/ are produced from these files by the C++ code and
must be refreshed (ghm replay ... --dump) whenever this script changes them.
"""

import datetime as dt
import hashlib
import json
import random
from email.utils import format_datetime
from pathlib import Path
from xml.sax.saxutils import escape

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


def story_id(url, headline):
    return hashlib.sha256(f"{url}\n{headline}".encode()).hexdigest()[:16]


def utc(*args):
    return dt.datetime(*args, tzinfo=dt.timezone.utc)


def iso(t):
    return t.strftime("%Y-%m-%dT%H:%M:%SZ")


# --------------------------------------------------------------------------
# Training corpus

OUTBREAK_DISEASES = [
    "bird flu", "H5N1", "cholera", "dengue fever", "Ebola", "measles", "meningitis", "polio",
    "foot-and-mouth disease", "equine influenza", "tuberculosis", "typhoid", "salmonella",
    "norovirus", "Marburg virus", "Rift Valley fever", "yellow fever", "whooping cough",
    "hepatitis A", "anthrax", "plague", "chikungunya", "legionnaires disease", "rabies",
]
PLACES = [
    ("Jakarta", "Indonesia"), ("Guangzhou", "China"), ("Hanoi", "Vietnam"), ("Kampala", "Uganda"),
    ("Kinshasa", "Democratic Republic of the Congo"), ("Dhaka", "Bangladesh"), ("Lagos", "Nigeria"),
    ("Nairobi", "Kenya"), ("Manila", "Philippines"), ("Karachi", "Pakistan"), ("Bangkok", "Thailand"),
    ("Lima", "Peru"), ("Cairo", "Egypt"), ("Kolkata", "India"), ("Luanda", "Angola"),
    ("Sydney", "Australia"), ("Bristol", "United Kingdom"), ("Houston", "United States"),
]
REL_HEADLINES = [
    "{d} outbreak confirmed in {c}",
    "Health officials report new {d} cases in {p}",
    "{d} kills {n} in {p}, {c}",
    "{p} hospitals treat suspected {d} patients",
    "Second {d} death reported in {c}",
    "{c} steps up surveillance after {d} cluster",
]
REL_BODIES = [
    "The Ministry of Health said {n} people had been admitted with symptoms and laboratory tests confirmed {d}. "
    "Officials in {p} have begun tracing contacts and vaccinating close contacts.",
    "Local authorities in {p} declared an outbreak after {n} suspected cases. The World Health Organization "
    "said it was monitoring the situation and sent an investigation team to {c}.",
    "Doctors in {p} reported a rise in patients with fever. Samples sent to the national laboratory tested "
    "positive for {d}, and the infection spread to nearby villages in {c}.",
    "Veterinary and health officials confirmed {d} in {p}. Quarantine was imposed and movement restrictions "
    "remain in place while the epidemic is contained.",
]
# Relevant-looking but lacking the usual outbreak wording.
REL_HARD = [
    ("Schools in {p} closed as {d} spreads", "Parents were told to keep children at home this week. {c} authorities said the illness had reached three districts."),
    ("{c} imports vaccine stocks against {d}", "Shipments arrived in {p} on Tuesday; clinics will begin immunisation of children next week."),
    ("Villagers near {p} fall ill", "Several families near {p} in {c} fell ill after drinking from a contaminated well; {d} is suspected."),
]
IRR_HEADLINES = [
    ("{p} stock exchange closes higher", "Shares in {p} rose for a third day as investors welcomed strong quarterly earnings from banks and telecom firms in {c}."),
    ("{c} wins cricket series", "The touring side from {c} completed a clean sweep in {p}, with the captain scoring a century on the final day."),
    ("Election campaign heats up in {c}", "Candidates held rallies across {p} on Sunday ahead of next month's parliamentary vote."),
    ("New airport terminal opens in {p}", "The terminal will handle ten million passengers a year, the transport minister of {c} said at the opening ceremony."),
    ("Floods disrupt traffic in {p}", "Heavy rain caused roads in {p} to close, but no injuries were reported, officials in {c} said."),
    ("{p} hosts film festival", "Directors from across {c} and abroad gathered in {p} for the week-long festival of independent cinema."),
    ("Central bank of {c} holds rates", "The bank left its key rate unchanged, citing stable inflation and steady growth in {p} and other cities."),
    ("Football club from {p} signs striker", "The club confirmed the transfer fee was a record for {c}, beating the previous mark set last season."),
]
# Irrelevant stories that mention a disease in passing.
IRR_HARD = [
    ("Drug maker shares rise on {d} vaccine contract", "Investors in {p} bid up the stock after the company won a government contract; analysts in {c} expect higher profits."),
    ("Charity run in {p} raises funds for {d} research", "Thousands of runners took part in the annual event in {c}, raising money for laboratory research."),
    ("Museum in {p} opens exhibition on history of {d}", "The exhibition in {c} traces centuries of medicine through posters, instruments and letters."),
]


def training_corpus():
    rng = random.Random(20071012)
    rows = []
    for i in range(30):
        d = rng.choice(OUTBREAK_DISEASES)
        p, c = rng.choice(PLACES)
        n = rng.randint(2, 90)
        if i % 6 == 5:
            h, b = rng.choice(REL_HARD)
        else:
            h, b = rng.choice(REL_HEADLINES), rng.choice(REL_BODIES)
        rows.append(("relevant", h.format(d=d, p=p, c=c, n=n).strip(), b.format(d=d, p=p, c=c, n=n)))
    for i in range(30):
        d = rng.choice(OUTBREAK_DISEASES)
        p, c = rng.choice(PLACES)
        h, b = rng.choice(IRR_HARD) if i % 6 == 5 else rng.choice(IRR_HEADLINES)
        rows.append(("irrelevant", h.format(d=d, p=p, c=c), b.format(d=d, p=p, c=c)))
    # Interleave so every cross-validation fold sees both classes.
    rel, irr = rows[:30], rows[30:]
    mixed = [x for pair in zip(rel, irr) for x in pair]
    out = DATA / "corpus" / "synthetic_training.tsv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w") as f:
        f.write("# label<TAB>headline<TAB>body\n")
        for label, h, b in mixed:
            h = h[0].upper() + h[1:]
            f.write(f"{label}\t{h}\t{b}\n")


# --------------------------------------------------------------------------
# Replay stream

SOURCES = [
    # id, file, genre, country hint, format, site
    ("ukpress", "feeds/ukpress.xml", "press", "GB", "rss", "http://news.example.co.uk"),
    ("auwire", "feeds/auwire.xml", "press", "AU", "atom", "http://www.example.com.au"),
    ("whodon", "feeds/whodon.xml", "official", "", "rss", "http://outbreaks.example.int"),
    ("bizwire", "feeds/bizwire.xml", "business", "", "rss", "http://markets.example.com"),
    ("cnmix", "feeds/cnmix.xml", "mixed", "CN", "atom", "http://english.example.cn"),
]

START = utc(2007, 10, 12)

# (day offset, hour, source, headline, body)
STREAM = [
    (0, 7, "auwire", "Equine influenza confirmed at Camden stables",
     "Racing officials in Australia confirmed equine influenza at two stables in Camden on Friday. Horse movements across New South Wales remain frozen while vets test more animals."),
    (0, 15, "bizwire", "Racing industry counts cost of horse flu",
     "Bookmakers and breeders said the equine influenza lockdown in Camden, Australia, had cost millions. Analysts expect spring carnival revenue to fall sharply this year."),
    (1, 9, "auwire", "Horse flu spreads to Hunter Valley properties",
     "Equine influenza has reached properties outside Camden, officials said. Australia has never before had to contain the virus and vaccination of horses began this week."),
    (1, 20, "ukpress", "Premier League leaders extend winning run",
     "Manchester United beat their rivals 3-1 at Old Trafford to stay top of the table. The manager praised his strikers after the match."),
    (2, 11, "whodon", "Avian influenza situation in Indonesia - update",
     "The Ministry of Health of Indonesia has announced a new confirmed human case of H5N1 avian influenza in Jakarta. The case was a 28-year-old woman who died in hospital; contacts are under observation."),
    (2, 18, "cnmix", "Avian influenza situation in Indonesia - update",
     "The Ministry of Health of Indonesia has announced a new confirmed human case of H5N1 avian influenza in Jakarta. The case was a 28-year-old woman who died in hospital; contacts are under observation."),
    (3, 8, "bizwire", "Oil prices climb to record high",
     "Crude futures rose above 85 dollars a barrel in New York as traders worried about supply. Airlines and shipping firms said fuel costs were squeezing margins."),
    (3, 16, "ukpress", "Winter vomiting bug closes wards on Isle of Wight",
     "Two wards at the hospital on the Isle of Wight were closed after an outbreak of norovirus. Visitors were asked to stay away while staff disinfect the wards."),
    (4, 10, "ukpress", "Norovirus outbreak on Isle of Wight affects 40 patients",
     "Health officials said 40 patients and staff on the Isle of Wight had norovirus symptoms. The Health Protection Agency said cases of the winter vomiting bug usually peak in colder months."),
    (4, 21, "cnmix", "Shanghai hosts international trade fair",
     "Exporters from across China showed electronics and textiles at the fair in Shanghai. Organisers expected record orders this year."),
    (5, 6, "whodon", "Ebola haemorrhagic fever in the Democratic Republic of the Congo",
     "The Ministry of Health of the Democratic Republic of the Congo reported Ebola cases in Kasai Occidental with deaths among health workers. Laboratory samples tested in Kinshasa confirmed Ebola virus."),
    (5, 14, "bizwire", "Mining company shares slip in Kinshasa",
     "Shares of the copper miner fell after the government reviewed contracts in Kinshasa. Analysts said the review could take months."),
    (6, 9, "whodon", "Ebola outbreak in Kinshasa province contained says ministry",
     "Officials in Kinshasa said the Ebola outbreak was under control after no new cases for two weeks. The Democratic Republic of the Congo will keep surveillance in place."),
    (7, 12, "auwire", "Camden horse flu quarantine extended",
     "The quarantine zone around Camden was extended for another month after new equine influenza cases. Racing in Australia remains disrupted and trainers expressed frustration."),
    (7, 19, "ukpress", "Measles cases rise in Camden schools",
     "Public health doctors in London reported a rise in measles among children at schools in Camden. Parents were urged to make sure children had two doses of MMR vaccine."),
    (8, 8, "ukpress", "Government announces new rail investment",
     "The transport secretary set out plans for faster trains between London and Manchester. Work on the first stage is due to start in 2009."),
    (8, 17, "cnmix", "Bird flu found in poultry in Guangzhou",
     "Agriculture officials in Guangzhou confirmed H5N1 bird flu in a flock of ducks. China culled thousands of birds near the farm and disinfected markets."),
    (9, 10, "cnmix", "Guangzhou bird flu cull completed",
     "Officials said the cull around the Guangzhou farm was complete and no human cases of bird flu had been found. China's Ministry of Agriculture continues testing poultry."),
    (9, 20, "bizwire", "Tech stocks rally on strong earnings",
     "Shares of chip makers rose after results beat forecasts. Investors in Toronto and New York welcomed the news."),
    (10, 7, "whodon", "Cholera in Iraq - update",
     "The Ministry of Health of Iraq reported new cholera cases in Baghdad. Water treatment in Baghdad has been stepped up to contain the outbreak of cholera."),
    (10, 15, "ukpress", "Cholera spreads to Baghdad",
     "Cholera has spread to Baghdad, health officials said, with cases confirmed in two districts. Aid agencies warned that poor water supplies in Iraq made the outbreak hard to control."),
    (11, 13, "auwire", "Sydney prepares for summer festival season",
     "Organisers in Sydney expect record crowds at concerts and fireworks this summer. Police will increase patrols on busy nights."),
    (11, 18, "bizwire", "Flu cases at London office prompt deep clean",
     "An office in London was closed for cleaning after staff reported flu. The company said business would continue from its other sites."),
    (12, 9, "whodon", "Dengue fever in the Philippines",
     "Health officials in Manila reported a sharp rise in dengue fever cases. The Philippines Department of Health urged residents to remove standing water."),
    (12, 16, "cnmix", "Dengue fever outbreak in Manila",
     "Dengue fever cases in Manila have doubled since last month, officials said. Hospitals in the Philippines set up extra beds for patients."),
    (13, 11, "ukpress", "Foot-and-mouth disease confirmed in United Kingdom cattle",
     "Defra confirmed foot-and-mouth disease in cattle at a farm south of London. A protection zone was set up and livestock movements across the United Kingdom were halted."),
    (13, 19, "bizwire", "Meat exporters hit by foot-and-mouth ban",
     "Exporters said the ban on livestock movements after foot-and-mouth disease in the United Kingdom would cost millions. Officials hope to lift restrictions soon."),
    (14, 8, "ukpress", "Opera season opens to strong reviews",
     "Critics praised the new production at the opera house. Tickets for the remaining performances have sold out."),
    (14, 14, "whodon", "Rift Valley fever in Kenya - update",
     "The Ministry of Health of Kenya reported new Rift Valley fever cases near Nairobi. Livestock vaccination and mosquito control are underway in affected districts of Kenya."),
    (15, 10, "auwire", "Camden racing resumes under strict rules",
     "Racing returned to Camden under strict biosecurity after the equine influenza outbreak eased. Australia's racing authorities warned that rules would remain until all horses were cleared."),
    (15, 20, "cnmix", "Beijing marathon draws record field",
     "More than 30,000 runners took part in the Beijing marathon on Sunday. The winner finished in just over two hours and nine minutes."),
    (16, 9, "whodon", "Meningococcal disease in Nigeria",
     "Meningitis cases were reported in Lagos and northern states of Nigeria. Vaccination campaigns are planned for the coming weeks."),
    (16, 17, "ukpress", "Meningitis case at Bristol university",
     "A student at a university in Bristol was treated for meningitis. Close contacts were given antibiotics as a precaution, health officials said."),
    (17, 12, "bizwire", "Retail sales beat expectations",
     "Retailers reported strong sales in October as shoppers returned to stores. Economists said consumer confidence had improved."),
    (18, 8, "cnmix", "Hand, foot and mouth disease cases in Guangzhou kindergartens",
     "Health officials in Guangzhou closed two kindergartens after children developed hand, foot and mouth disease. China has reported rising cases this autumn."),
    (18, 15, "whodon", "Avian influenza - situation in Indonesia - update 2",
     "A new human case of H5N1 was confirmed in Jakarta, bringing the total for Indonesia this year to 42. The patient, a child, is recovering in hospital."),
    (19, 11, "ukpress", "Isle of Wight ferry fares to rise",
     "Ferry operators serving the Isle of Wight announced higher fares from January. Passenger groups criticised the increase."),
    (19, 18, "bizwire", "Bird flu vaccine maker wins contract",
     "Shares in the vaccine maker rose after it won a government contract to supply H5N1 vaccine. The order will be delivered next year."),
    (20, 9, "auwire", "Salmonella outbreak linked to Brisbane restaurant",
     "Queensland Health said 30 people fell ill with salmonella after eating at a restaurant in Brisbane. The restaurant was closed and food samples were tested."),
    (20, 16, "auwire", "Brisbane salmonella cases reach 45",
     "Salmonella cases linked to the Brisbane restaurant rose to 45, with six patients in hospital. Health inspectors traced the outbreak to contaminated eggs."),
    (21, 13, "ukpress", "Tuberculosis cases rise in London",
     "Tuberculosis cases in London rose for the fifth year, the Health Protection Agency said. Experts called for better screening in the capital."),
    (21, 20, "cnmix", "Stock index falls as lenders tighten credit",
     "The main index fell two percent as banks tightened credit in Shanghai. Property developers led the decline."),
    (22, 10, "whodon", "Marburg haemorrhagic fever in Uganda",
     "The Ministry of Health of Uganda confirmed a case of Marburg virus in a miner near Kampala. Contacts are being followed and the mine has been closed."),
    (22, 18, "bizwire", "Uganda mining firm halts work after Marburg case",
     "A mining company near Kampala suspended operations after a worker contracted Marburg virus. Uganda health officials are investigating."),
    (23, 8, "ukpress", "Chancellor unveils pre-budget report",
     "The chancellor set out new tax measures in the pre-budget report. Opposition parties criticised the plans."),
    (23, 14, "auwire", "Rabies scare in Darwin ends",
     "Tests on a bat found in Darwin came back negative for rabies, officials said. Residents were reminded not to handle wild animals."),
    (24, 9, "cnmix", "Hanoi reports new bird flu outbreak in poultry",
     "Veterinary officials in Hanoi confirmed bird flu in chickens at two farms. Vietnam ordered a cull and vaccination of nearby flocks."),
    (24, 17, "whodon", "Avian influenza in Viet Nam",
     "Vietnam reported H5N1 in poultry in Hanoi and two northern provinces. No human cases have been reported in this outbreak."),
    (25, 11, "bizwire", "Airline traffic rises in Asia",
     "Airlines in Asia carried more passengers in October, an industry group said. Carriers in Bangkok and Jakarta saw the strongest growth."),
    (25, 19, "ukpress", "Norovirus closes Glasgow hospital ward",
     "A ward at a hospital in Glasgow was closed after an outbreak of norovirus. Visitors were asked to stay away until further notice."),
    (26, 9, "whodon", "Cholera in Iraq - update 2",
     "Cholera cases continued in Baghdad and northern provinces, the Ministry of Health of Iraq said. Chlorination of water supplies has been expanded."),
    (26, 16, "auwire", "Cricket team named for summer tests",
     "Selectors named the squad for the home test series, with two uncapped players. The first match is in Brisbane."),
    (27, 10, "cnmix", "Dengue fever cases decline in Guangzhou",
     "Dengue fever cases in Guangzhou fell as cooler weather arrived, officials in China said. Mosquito control will continue."),
    (27, 18, "ukpress", "Whooping cough rise among Manchester infants",
     "Doctors in Manchester reported more cases of whooping cough among infants. Pregnant women were urged to get vaccinated."),
    (28, 8, "bizwire", "Pharmaceutical sales grow in emerging markets",
     "Drug makers reported growing sales in India and China. Analysts expect the trend to continue next year."),
    (28, 15, "whodon", "Yellow fever in Peru",
     "Peru reported yellow fever cases in the Amazon region, with patients treated in Lima. Vaccination teams were sent to affected villages."),
    (29, 9, "auwire", "Equine influenza: Camden stables cleared",
     "Vets cleared the last Camden stables of equine influenza. Australia expects to lift remaining horse movement restrictions next month."),
    (29, 16, "ukpress", "Measles outbreak in Camden prompts vaccine drive",
     "Health officials in London began a vaccination drive after measles spread in Camden. More than 20 children have been infected since October."),
    (30, 7, "cnmix", "Bird flu confirmed in Jakarta poultry market",
     "Indonesia's agriculture ministry confirmed H5N1 bird flu in chickens at a Jakarta market. Traders were told to disinfect stalls."),
    (30, 12, "bizwire", "Holiday bookings up on last year",
     "Travel agents reported more winter holiday bookings than last year. Sunshine destinations were the most popular."),
]


def write_feeds():
    base = DATA / "fixtures" / "replay"
    (base / "feeds").mkdir(parents=True, exist_ok=True)
    with (base / "sources.tsv").open("w") as f:
        f.write("# id<TAB>url<TAB>genre<TAB>country_hint\n")
        for sid, path, genre, hint, _, _ in SOURCES:
            f.write(f"{sid}\t{path}\t{genre}\t{hint}\n")

    for sid, path, genre, hint, fmt, site in SOURCES:
        items = []
        for n, (day, hour, src, headline, body) in enumerate(STREAM):
            if src != sid:
                continue
            when = START + dt.timedelta(days=day, hours=hour)
            slug = headline.lower().replace(" ", "-").replace(",", "").replace(":", "")
            link = f"{site}/{when:%Y/%m/%d}/{slug}-{n}"
            items.append((when, headline, body, link))
        items.sort(key=lambda x: x[0], reverse=True)
        if fmt == "rss":
            lines = ['<?xml version="1.0" encoding="UTF-8"?>', '<rss version="2.0">', "<channel>",
                     f"<title>{sid}</title>", f"<link>{site}/</link>", f"<description>{sid} feed</description>"]
            for when, headline, body, link in items:
                lines += ["<item>", f"<title>{escape(headline)}</title>", f"<link>{escape(link)}</link>",
                          f"<description><![CDATA[<p>{body}</p>]]></description>",
                          f"<pubDate>{format_datetime(when, usegmt=True)}</pubDate>", "</item>"]
            lines += ["</channel>", "</rss>"]
        else:
            lines = ['<?xml version="1.0" encoding="UTF-8"?>', '<feed xmlns="http://www.w3.org/2005/Atom">',
                     f"<title>{sid}</title>", f"<id>{site}/</id>",
                     f"<updated>{iso(items[0][0])}</updated>"]
            for when, headline, body, link in items:
                lines += ["<entry>", f"<title>{escape(headline)}</title>",
                          f'<link rel="alternate" href="{escape(link)}"/>', f"<id>{escape(link)}</id>",
                          f"<published>{iso(when)}</published>", f"<updated>{iso(when)}</updated>",
                          f'<summary type="html">{escape(body)}</summary>', "</entry>"]
            lines += ["</feed>"]
        (base / path).write_text("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# API fixture: a published cycle plus the stories it references.
# now = 2007-11-11T15:00:00Z (a Sunday; the ISO week began 2007-11-05).

API_STORIES = {
    # key: (source, genre, url, headline, published)
    "s1": ("whodon", "Official", "http://outbreaks.example.int/don/2007-11-11-indonesia", "Avian influenza in Indonesia", utc(2007, 11, 11, 8)),
    "s2": ("ukpress", "Press", "http://news.example.co.uk/2007/11/11/jakarta-bird-flu", "Bird flu death in Jakarta", utc(2007, 11, 11, 9)),
    "s3": ("ukpress", "Press", "http://news.example.co.uk/2007/11/11/isle-of-wight-norovirus", "Norovirus closes Isle of Wight wards", utc(2007, 11, 11, 6)),
    "s4": ("whodon", "Official", "http://outbreaks.example.int/don/2007-11-07-iraq", "Cholera in Iraq", utc(2007, 11, 7, 10)),
    "s5": ("auwire", "Press", "http://www.example.com.au/2007/11/06/camden-horse-flu", "Camden horse flu quarantine extended", utc(2007, 11, 6, 12)),
    "s6": ("bizwire", "Business", "http://markets.example.com/2007/10/20/tb-drug", "Tuberculosis drug trial in Houston", utc(2007, 10, 20, 9)),
    "s7": ("whodon", "Official", "http://outbreaks.example.int/don/2007-10-21-usa-tb", "XDR-TB case in the United States", utc(2007, 10, 21, 9)),
    "s8": ("ukpress", "Press", "http://news.example.co.uk/2007/10/15/bristol-salmonella", "Salmonella outbreak in Bristol", utc(2007, 10, 15, 14)),
    "s9": ("whodon", "Official", "http://outbreaks.example.int/don/2007-11-04-drc", "Ebola in the Democratic Republic of the Congo", utc(2007, 11, 4, 11)),
    "s10": ("ukpress", "Press", "http://news.example.co.uk/2007/11/10/kampala-illness", "Mystery illness in Kampala", utc(2007, 11, 10, 7)),
    "s11": ("whodon", "Official", "http://outbreaks.example.int/don/2007-10-01-measles", "Measles in Lima", utc(2007, 10, 1, 9)),
    "s12": ("bizwire", "Business", "http://markets.example.com/2007/11/09/lagos-meningitis", "Meningitis hits Lagos workforce", utc(2007, 11, 9, 10)),
    "s13": ("whodon", "Official", "http://outbreaks.example.int/don/2007-11-08-anthrax", "Anthrax in Nairobi livestock", utc(2007, 11, 8, 9)),
    "s14": ("cnmix", "Mixed", "http://english.example.cn/2007/11/11/indonesia", "Avian influenza in Indonesia", utc(2007, 11, 11, 13)),
}

# disease, grounded, location_id, surface, tier, story keys, first_seen
API_EVENTS = [
    ("avian-influenza", True, "ID-1642911", "jakarta", "Unambiguous", ["s1", "s2", "s14"], utc(2007, 11, 11, 8)),
    ("norovirus", True, "GB-isle-of-wight", "isle of wight", "SourceHint", ["s3"], utc(2007, 11, 11, 6)),
    ("cholera", True, "IQ-98182", "baghdad", "Unambiguous", ["s4"], utc(2007, 11, 7, 10)),
    ("equine-influenza", True, "AU-camden", "camden", "ContextCountry", ["s5"], utc(2007, 11, 6, 12)),
    ("tuberculosis", True, "US-4699066", "houston", "Unambiguous", ["s6", "s7"], utc(2007, 10, 20, 9)),
    ("salmonellosis", True, "GB-2654675", "bristol", "Unambiguous", ["s8"], utc(2007, 10, 15, 14)),
    ("ebola", True, "CD-2314302", "kinshasa", "Unambiguous", ["s9"], utc(2007, 11, 4, 11)),
    ("mystery illness", False, "UG-232422", "kampala", "Unambiguous", ["s10"], utc(2007, 11, 10, 7)),
    ("measles", True, "PE-3936456", "lima", "Unambiguous", ["s11"], utc(2007, 10, 1, 9)),
    ("meningococcal", True, "NG-2332459", "lagos", "Unambiguous", ["s12"], utc(2007, 11, 9, 10)),
    ("anthrax", True, "KE-184745", "nairobi", "Unambiguous", ["s13"], utc(2007, 11, 8, 9)),
]


def write_api_fixture():
    base = DATA / "fixtures" / "api"
    base.mkdir(parents=True, exist_ok=True)
    ids = {}
    with (base / "stories.jsonl").open("w") as f:
        for key, (src, genre, url, headline, published) in API_STORIES.items():
            ids[key] = story_id(url, headline)
            f.write(json.dumps({
                "id": ids[key], "source_id": src, "url": url, "headline": headline,
                "body": f"{headline}. Fixture story {key}.", "published_at": iso(published),
                "fetched_at": iso(published + dt.timedelta(minutes=20)), "genre": genre,
            }) + "\n")
    detected = utc(2007, 11, 11, 15)
    with (base / "events.jsonl").open("w") as f:
        for disease, grounded, loc, surface, tier, keys, first in API_EVENTS:
            f.write(json.dumps({
                "disease": disease, "disease_grounded": grounded, "location_id": loc,
                "location_surface": surface, "corpus_freq": len(keys), "tier": tier,
                "story_ids": sorted(ids[k] for k in keys), "first_seen": iso(first),
                "detected_at": iso(detected),
            }) + "\n")
    with (base / "story_keys.tsv").open("w") as f:
        f.write("# fixture key<TAB>story id\n")
        for key, sid in ids.items():
            f.write(f"{key}\t{sid}\n")


if __name__ == "__main__":
    training_corpus()
    write_feeds()
    write_api_fixture()
