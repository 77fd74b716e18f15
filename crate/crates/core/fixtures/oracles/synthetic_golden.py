"""Hand-enumerated expected mapping of aas/synthetic.xml.

Every triple below was written out by reading the fixture, not by running
the mapper. Output: canonical N-Triples (one line per triple, sorted by
code point, LF endings), written to golden/synthetic.nt.
"""
import pathlib

RAMI = "https://w3id.org/i40/rami#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"
EX = "https://example.org/"


def iri(v):
    return "<" + v + ">"


def lit(text, lang=None, dt=None):
    s = '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if lang:
        return s + "@" + lang
    if dt:
        return s + "^^" + iri(XSD + dt)
    return s


TYPE = iri(RDF + "type")
LABEL = iri(RDFS + "label")
COMMENT = iri(RDFS + "comment")
PROPERTY = iri(RDF + "Property")

shell = iri(EX + "aas/conveyor-01")
asset = iri(EX + "assets/conveyor-01")
td = iri(EX + "submodels/technical-data")
doc = iri(EX + "submodels/documentation")


def cd(name):
    return iri(EX + "cd/" + name)


def rami(local):
    return iri(RAMI + local)


triples = [
    (shell, TYPE, rami("AssetShell")),
    (shell, LABEL, lit("ConveyorShell")),
    (shell, COMMENT, lit("Shell of conveyor 01", lang="en")),
    (shell, COMMENT, lit("Verwaltungsschale Förderband 01", lang="de")),
    (shell, rami("hasAsset"), asset),
    (shell, rami("hasSubmodel"), td),
    (shell, rami("hasSubmodel"), doc),

    (asset, TYPE, rami("Asset")),
    (asset, LABEL, lit("Conveyor01")),
    (asset, COMMENT, lit("Belt conveyor", lang="en")),
    (asset, rami("kind"), lit("Instance")),

    (td, TYPE, rami("Submodel")),
    (td, LABEL, lit("TechnicalData")),
    (td, COMMENT, lit("Technical data", lang="en")),
    (td, rami("kind"), lit("Instance")),
    (td, cd("maxSpeed"), lit("2.5", dt="double")),
    (cd("maxSpeed"), TYPE, PROPERTY),
    (td, cd("beltWidth"), lit("800", dt="integer")),
    (cd("beltWidth"), TYPE, PROPERTY),
    (td, cd("reversible"), lit("true", dt="boolean")),
    (cd("reversible"), TYPE, PROPERTY),
    (td, cd("ratedPower"), lit("1.1", dt="float")),
    (cd("ratedPower"), TYPE, PROPERTY),
    (td, cd("manufacturer"), lit('Acme "Drive" GmbH')),
    (cd("manufacturer"), TYPE, PROPERTY),
    (td, cd("controller"), iri(EX + "assets/plc-07")),

    (doc, TYPE, rami("Submodel")),
    (doc, LABEL, lit("Documentation")),
    (doc, COMMENT, lit("Operating documentation", lang="en")),
    (doc, rami("kind"), lit("Instance")),
    (doc, cd("manual"), iri(EX + "docs/conveyor-manual.pdf")),
    (doc, cd("commissioningDate"), lit("2019-03-14", dt="date")),
    (cd("commissioningDate"), TYPE, PROPERTY),

    (cd("maxSpeed"), TYPE, rami("ConceptDescription")),
    (cd("maxSpeed"), LABEL, lit("MaxSpeed")),
    (cd("maxSpeed"), COMMENT, lit("Maximum belt speed in normal operation", lang="en")),
    (cd("maxSpeed"), rami("preferredName"), lit("maximum speed", lang="en")),
    (cd("maxSpeed"), rami("preferredName"), lit("Höchstgeschwindigkeit", lang="de")),
    (cd("maxSpeed"), rami("unit"), lit("m/s")),
    (cd("maxSpeed"), rami("dataType"), lit("REAL_MEASURE")),
]

assert len(set(triples)) == len(triples)
lines = sorted(" ".join(t) + " ." for t in triples)
out = pathlib.Path(__file__).resolve().parent.parent / "golden" / "synthetic.nt"
out.write_bytes(("\n".join(lines) + "\n").encode("utf-8"))
print(f"{len(lines)} triples -> {out}")
