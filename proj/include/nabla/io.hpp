#pragma once

#include <iosfwd>
#include <string>

#include "nabla/fincat.hpp"
#include "nabla/multicat.hpp"
#include "nabla/segal.hpp"

namespace nabla {

// A multicategory definition file together with its optional symmetry table.
struct LoadedMulticat {
  FinMulticategory cat;
  GSymAction action;  // backed by the file's table; identity entries implied
  bool has_symmetry = false;
};

// Parses a multicategory definition file (UTF-8 JSON).  The arity bound of
// the result is max(requested bound, largest arity in the file).  Throws
// std::runtime_error naming the offending field on schema violations.
LoadedMulticat load_multicat(const std::string& path, int arity_bound);

// Parses a monoid definition file.
FinMonoid load_monoid(const std::string& path);

// Deterministic DOT export: one node per object (label = object name), one
// edge per non-identity morphism (label = morphism label), in index order.
void write_dot(const FinCategory& c, std::ostream& os);
std::string dot_text(const FinCategory& c);

}  // namespace nabla
