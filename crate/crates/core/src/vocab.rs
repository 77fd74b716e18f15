//! IRI constants for the standard vocabularies used across the crate.

macro_rules! terms {
    ($($konst:ident, $func:ident => $iri:expr;)*) => {
        $(
            pub const $konst: &str = $iri;
            pub fn $func() -> crate::rdf::Iri {
                crate::rdf::Iri::from_static($konst)
            }
        )*
    };
}

pub mod rdf {
    pub const NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    terms! {
        TYPE, type_ => "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
        PROPERTY, property => "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
        LANG_STRING, lang_string => "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
        FIRST, first => "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
        REST, rest => "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
        NIL, nil => "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
    }
}

pub mod rdfs {
    pub const NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    terms! {
        LABEL, label => "http://www.w3.org/2000/01/rdf-schema#label";
        COMMENT, comment => "http://www.w3.org/2000/01/rdf-schema#comment";
        SUB_CLASS_OF, sub_class_of => "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    }
}

pub mod owl {
    pub const NS: &str = "http://www.w3.org/2002/07/owl#";
    terms! {
        SAME_AS, same_as => "http://www.w3.org/2002/07/owl#sameAs";
        CLASS, class => "http://www.w3.org/2002/07/owl#Class";
    }
}

pub mod xsd {
    pub const NS: &str = "http://www.w3.org/2001/XMLSchema#";
    terms! {
        STRING, string => "http://www.w3.org/2001/XMLSchema#string";
        INTEGER, integer => "http://www.w3.org/2001/XMLSchema#integer";
        DECIMAL, decimal => "http://www.w3.org/2001/XMLSchema#decimal";
        DOUBLE, double => "http://www.w3.org/2001/XMLSchema#double";
        FLOAT, float => "http://www.w3.org/2001/XMLSchema#float";
        LONG, long => "http://www.w3.org/2001/XMLSchema#long";
        BOOLEAN, boolean => "http://www.w3.org/2001/XMLSchema#boolean";
        DATE, date => "http://www.w3.org/2001/XMLSchema#date";
        DATE_TIME, date_time => "http://www.w3.org/2001/XMLSchema#dateTime";
        ANY_URI, any_uri => "http://www.w3.org/2001/XMLSchema#anyURI";
    }
}

pub mod skos {
    pub const NS: &str = "http://www.w3.org/2004/02/skos/core#";
    terms! {
        NOTE, note => "http://www.w3.org/2004/02/skos/core#note";
    }
}

pub mod sh {
    pub const NS: &str = "http://www.w3.org/ns/shacl#";
    terms! {
        NODE_SHAPE, node_shape => "http://www.w3.org/ns/shacl#NodeShape";
        TARGET_CLASS, target_class => "http://www.w3.org/ns/shacl#targetClass";
        PROPERTY, property => "http://www.w3.org/ns/shacl#property";
        PATH, path => "http://www.w3.org/ns/shacl#path";
        MIN_COUNT, min_count => "http://www.w3.org/ns/shacl#minCount";
        MAX_COUNT, max_count => "http://www.w3.org/ns/shacl#maxCount";
        DATATYPE, datatype => "http://www.w3.org/ns/shacl#datatype";
        CLASS, class => "http://www.w3.org/ns/shacl#class";
        NODE_KIND, node_kind => "http://www.w3.org/ns/shacl#nodeKind";
        IRI, iri => "http://www.w3.org/ns/shacl#IRI";
        LITERAL, literal => "http://www.w3.org/ns/shacl#Literal";
        BLANK_NODE_OR_IRI, blank_node_or_iri => "http://www.w3.org/ns/shacl#BlankNodeOrIRI";
    }
}

/// Prefixes every serializer may fall back on when a graph does not bind them.
pub const STANDARD_PREFIXES: &[(&str, &str)] = &[
    ("owl", owl::NS),
    ("rdf", rdf::NS),
    ("rdfs", rdfs::NS),
    ("sh", sh::NS),
    ("skos", skos::NS),
    ("xsd", xsd::NS),
];
