#pragma once

#include <string>

#include "cmif/inverse_limit.hpp"
#include "cmif/pattern.hpp"
#include "cmif/set_valued.hpp"

namespace cmif {

// A function-description file: one set-valued function plus naming metadata.
// The serialized form is canonical (sorted keys, fixed indentation, rationals
// as "p/q" strings), so serialize(parse(text)) == text for canonical input.
struct FunctionDocument {
  std::string name;
  std::string provenance;
  SetValuedFn fn;
};

// Parse a "cmif-doc/1" text. Throws std::invalid_argument with field context
// on syntax errors, schema violations, and the semantic violations the
// underlying constructors raise.
FunctionDocument parse_document(const std::string& text);
std::string serialize_document(const FunctionDocument& doc);

// Pattern files ("cmif-tau/1") describe a map relative to the partitions of
// the two functions it connects, so parsing needs both.
PatternMap parse_pattern_file(const std::string& text, const MarkovPartition& source,
                              const MarkovPartition& target);
std::string serialize_pattern_file(const PatternMap& t);

// Chain files ("cmif-chain/1") embed both function documents, the pattern
// map, and the lift depth: everything needed to rebuild the chain exactly.
struct ChainDocument {
  FunctionDocument f, g;
  PatternMap tau;
  long depth = 0;
};

ChainDocument parse_chain_file(const std::string& text);
std::string serialize_chain_file(const FunctionDocument& f, const FunctionDocument& g,
                                 const PatternMap& tau, long depth);

// Cloud exchange format: one tuple per line, coordinates as "p/q" separated
// by commas. Parsing recovers depth and tuples; the sampling parameters are
// not part of the format and come back zeroed.
std::string cloud_csv(const DepthNApprox& a);
DepthNApprox cloud_from_csv(const std::string& text);

}  // namespace cmif
