#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "ellassoc/algebra.hpp"
#include "ellassoc/associator.hpp"
#include "ellassoc/diagrams.hpp"
#include "ellassoc/elliptic.hpp"
#include "ellassoc/lie.hpp"

namespace ellassoc {

using Json = nlohmann::json;

// Every loader throws LoadError carrying the JSON pointer of the offending value.

// {"alphabet":[{"name","degree"}...], "truncation":N,
//  "terms":[{"degree":d, "bracket":tree, "coeff":"p/q"}...]}
// A bracket tree is a generator name or a two-element array. Saved terms use
// the standard bracketing of Lyndon words; loaded trees may be any bracketing.
Json lie_to_json(const LieSeries& s);
LieSeries lie_from_json(const Json& j);

// Same schema on the alphabet {A, B}; degree-1 and constant terms are rejected.
// An empty term list loads as phi = 1 and appends a warning.
Json associator_to_json(const AssociatorSeries& phi);
AssociatorSeries associator_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);

// {"algebra":"t1n(3)", "truncation":N, "terms":[{"word":["y1","x1"], "coeff":"1/1"}...]}
// Words are raw; loading reduces them.
Json element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const Json& j);

// {"strands":n, "slots":[[edge ids per strand, bottom to top]...],
//  "trivalent":[{"edges":[e1,e2,e3]}...], "legs":[{"label":"x","order":k,"edge":e}...]}
Json diagram_to_json(const Diagram& d);
// Empty when the diagram vanishes by antisymmetry.
std::optional<SignedDiagram> diagram_from_json(const Json& j);

// {"terms":[{"coeff":"p/q", "diagram":{...}}...]}
Json diagram_element_to_json(const DiagramElement& e);
DiagramElement diagram_element_from_json(const Json& j);

// {"truncation":N, "phi":{...}, "x":{...}, "y":{...}, "log_x":{...}, "log_y":{...}}
Json elliptic_pair_to_json(const EllipticPair& pair, const AssociatorSeries& phi);

// Lie coordinates of an element of a free algebra whose log is primitive.
LieSeries free_element_to_lie(const AlgebraElement& a);

}  // namespace ellassoc
