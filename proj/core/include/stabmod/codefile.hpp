#pragma once
// On-disk JSON formats: "stabmod-code/1" for stabilizer codes and
// "stabmod-qs/1" for one-variable quasi-symplectic modules.  Loading
// validates shapes, parses the polynomial text syntax, and checks the
// structural invariants (isotropy for codes, form laws for modules);
// diagnostics carry file:line:column positions where they can be located.
#include <string>

#include "stabmod/quasisym.hpp"
#include "stabmod/symplectic.hpp"

namespace stabmod {

// canonical rendering; parse_code_text(render_code_json(c)) reproduces c
std::string render_code_json(const StabilizerCode& code);
StabilizerCode parse_code_text(const std::string& text,
                               const std::string& origin = "<memory>");
StabilizerCode load_code_file(const std::string& path);

// "zoo:NAME" resolves a built-in fixture; anything else is a file path
StabilizerCode resolve_code_spec(const std::string& spec);

std::string render_qs_json(const QuasiSymplectic1D& P,
                           const std::string& name = "");
QuasiSymplectic1D parse_qs_text(const std::string& text,
                                const std::string& origin = "<memory>");
QuasiSymplectic1D load_qs_file(const std::string& path);

// "qs:NAME" resolves a built-in module (currently "z4demo", a rank-4 module
// over Z_4 mixing a free hyperbolic plane with a 2-torsion plane); anything
// else is a file path
QuasiSymplectic1D resolve_qs_spec(const std::string& spec);

}  // namespace stabmod
