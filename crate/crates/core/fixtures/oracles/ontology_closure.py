"""Number of triples the subclass rules add to the bundled ontology alone.

Independent of the Rust engine: parses ontology/rami.ttl with rdflib,
keeps the subClassOf / type / sameAs axioms and iterates rdfs9 and rdfs11
to a fixpoint. sameAs rules add nothing because the ontology has no sameAs
triples (asserted below).
"""
import pathlib

import rdflib
from rdflib.namespace import OWL, RDF, RDFS

here = pathlib.Path(__file__).resolve().parent.parent
g = rdflib.Graph().parse(here / "ontology" / "rami.ttl", format="turtle")
axioms = {t for t in g if t[1] in (RDFS.subClassOf, RDF.type, OWL.sameAs)}
assert not any(p == OWL.sameAs for _, p, _ in axioms)

closure = set(axioms)
while True:
    sub = [(s, o) for s, p, o in closure if p == RDFS.subClassOf]
    new = {(c, RDFS.subClassOf, e) for c, d in sub for d2, e in sub if d == d2}
    new |= {(x, RDF.type, d) for c, d in sub for x, p, c2 in closure if p == RDF.type and c2 == c}
    if new <= closure:
        break
    closure |= new
print(len(closure - axioms))
