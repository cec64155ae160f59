#include "stabmod/codefile.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "stabmod/zoo.hpp"

namespace stabmod {

namespace {

using nlohmann::json;

struct TextPos {
  size_t line = 1;
  size_t col = 1;
};

TextPos pos_of_offset(const std::string& text, size_t off) {
  TextPos p;
  off = std::min(off, text.size());
  for (size_t i = 0; i < off; ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.col = 1;
    } else {
      ++p.col;
    }
  }
  return p;
}

// best-effort location of a JSON string token inside the raw text (first
// occurrence of its escaped literal); used to point at bad polynomial cells
std::string locate_string_token(const std::string& text,
                                const std::string& value) {
  const std::string literal = json(value).dump();
  size_t at = text.find(literal);
  if (at == std::string::npos) return "";
  TextPos p = pos_of_offset(text, at);
  return ":" + std::to_string(p.line) + ":" + std::to_string(p.col);
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw Error(ErrorKind::parse_error, origin + ": " + what);
}

json parse_json_or_fail(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    // strip the "[json.exception...]" tag; the remainder states line/column
    if (size_t cut = msg.find("] "); cut != std::string::npos)
      msg = msg.substr(cut + 2);
    if (msg.find(" line ") == std::string::npos) {
      TextPos p = pos_of_offset(text, e.byte ? e.byte - 1 : 0);
      msg = "parse error at line " + std::to_string(p.line) + ", column " +
            std::to_string(p.col) + ": " + msg;
    }
    fail(origin, msg);
  }
}

const json& field(const json& j, const std::string& key,
                  const std::string& origin) {
  auto it = j.find(key);
  if (it == j.end()) fail(origin, "missing required field '" + key + "'");
  return *it;
}

u64 uint_field(const json& j, const std::string& key,
               const std::string& origin, u64 lo, u64 hi) {
  const json& v = field(j, key, origin);
  if (!v.is_number_unsigned())
    fail(origin, "field '" + key + "' must be a non-negative integer");
  u64 x = v.get<u64>();
  if (x < lo || x > hi)
    fail(origin, "field '" + key + "' = " + std::to_string(x) +
                     " outside the accepted range [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]");
  return x;
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& origin) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(origin, "unknown field '" + it.key() + "'");
}

Poly parse_poly_cell(RingCtx ctx, const json& cell, const std::string& where,
                     const std::string& text, const std::string& origin) {
  if (!cell.is_string())
    fail(origin, where + ": expected a polynomial string");
  const std::string s = cell.get<std::string>();
  try {
    return parse_poly(ctx, s);
  } catch (const Error& e) {
    fail(origin + locate_string_token(text, s), where + ": " + e.what());
  }
}

// columns of length `rows`, every entry in the polynomial text syntax
PolyMat parse_poly_columns(RingCtx ctx, const json& arr, size_t rows,
                           const std::string& key, const std::string& text,
                           const std::string& origin) {
  if (!arr.is_array())
    fail(origin, "field '" + key + "' must be an array of columns");
  PolyMat out;
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& col = arr[i];
    const std::string where = key + "[" + std::to_string(i) + "]";
    if (!col.is_array() || col.size() != rows)
      fail(origin, where + ": expected an array of " + std::to_string(rows) +
                       " polynomial strings");
    PolyVec v;
    for (size_t r = 0; r < rows; ++r)
      v.push_back(parse_poly_cell(
          ctx, col[r], where + "[" + std::to_string(r) + "]", text, origin));
    out.push_back(std::move(v));
  }
  return out;
}

json render_poly_columns(const PolyMat& cols) {
  json arr = json::array();
  for (const auto& col : cols) {
    json c = json::array();
    for (const auto& p : col) c.push_back(p.str());
    arr.push_back(std::move(c));
  }
  return arr;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::parse_error, path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

QuasiSymplectic1D builtin_qs_z4demo() {
  RingCtx ctx{4, 1};
  auto c = [&](u64 v) { return Poly::constant(ctx, v); };
  QuasiSymplectic1D P;
  P.ctx = ctx;
  P.k = 4;
  // free hyperbolic plane (g1, g2) stacked with a 2-torsion plane (g3, g4)
  P.relations = {{c(0), c(0), c(2), c(0)}, {c(0), c(0), c(0), c(2)}};
  P.gram = {{c(0), c(1), c(0), c(0)},
            {c(3), c(0), c(0), c(0)},
            {c(0), c(0), c(0), c(2)},
            {c(0), c(0), c(2), c(0)}};
  return P;
}

}  // namespace

std::string render_code_json(const StabilizerCode& code) {
  json j;
  j["format"] = "stabmod-code/1";
  j["modulus"] = code.ctx.n;
  j["dimension"] = code.ctx.d;
  j["sites"] = code.m;
  if (!code.name.empty()) j["name"] = code.name;
  j["sigma"] = render_poly_columns(code.sigma);
  return j.dump(2) + "\n";
}

StabilizerCode parse_code_text(const std::string& text,
                               const std::string& origin) {
  json j = parse_json_or_fail(text, origin);
  if (!j.is_object()) fail(origin, "top level must be a JSON object");
  check_keys(j,
             {"format", "modulus", "dimension", "sites", "sigma", "name",
              "metadata"},
             origin);
  const json& fmt = field(j, "format", origin);
  if (!fmt.is_string() || fmt.get<std::string>() != "stabmod-code/1")
    fail(origin, "field 'format' must be \"stabmod-code/1\"");

  StabilizerCode code;
  code.ctx.n = uint_field(j, "modulus", origin, 2, u64(1) << 31);
  code.ctx.d = static_cast<int>(uint_field(j, "dimension", origin, 1, 16));
  code.m = static_cast<int>(uint_field(j, "sites", origin, 1, 1 << 16));
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) fail(origin, "field 'name' must be a string");
    code.name = it->get<std::string>();
  }
  if (auto it = j.find("metadata"); it != j.end() && !it->is_object())
    fail(origin, "field 'metadata' must be an object");
  code.sigma = parse_poly_columns(code.ctx, field(j, "sigma", origin),
                                  2 * static_cast<size_t>(code.m), "sigma",
                                  text, origin);
  code.validate_shapes();
  try {
    is_isotropic(code, /*throwing=*/true);
  } catch (const Error& e) {
    throw Error(ErrorKind::validation_error, origin + ": " + e.what());
  }
  return code;
}

StabilizerCode load_code_file(const std::string& path) {
  return parse_code_text(read_file(path), path);
}

StabilizerCode resolve_code_spec(const std::string& spec) {
  if (spec.rfind("zoo:", 0) == 0) return zoo_code(spec.substr(4));
  return load_code_file(spec);
}

std::string render_qs_json(const QuasiSymplectic1D& P,
                           const std::string& name) {
  json j;
  j["format"] = "stabmod-qs/1";
  j["modulus"] = P.ctx.n;
  j["dimension"] = 1;
  j["rank"] = P.k;
  if (!name.empty()) j["name"] = name;
  j["relations"] = render_poly_columns(P.relations);
  json gram = json::array();
  for (const auto& row : P.gram) {
    json r = json::array();
    for (const auto& p : row) r.push_back(p.str());
    gram.push_back(std::move(r));
  }
  j["gram"] = gram;
  return j.dump(2) + "\n";
}

QuasiSymplectic1D parse_qs_text(const std::string& text,
                                const std::string& origin) {
  json j = parse_json_or_fail(text, origin);
  if (!j.is_object()) fail(origin, "top level must be a JSON object");
  check_keys(j,
             {"format", "modulus", "dimension", "rank", "relations", "gram",
              "name", "metadata"},
             origin);
  const json& fmt = field(j, "format", origin);
  if (!fmt.is_string() || fmt.get<std::string>() != "stabmod-qs/1")
    fail(origin, "field 'format' must be \"stabmod-qs/1\"");
  if (auto it = j.find("dimension"); it != j.end()) {
    if (!it->is_number_unsigned() || it->get<u64>() != 1)
      throw Error(ErrorKind::unsupported_ring,
                  origin + ": quasi-symplectic input must be one-variable "
                           "(dimension 1)");
  }

  QuasiSymplectic1D P;
  P.ctx.n = uint_field(j, "modulus", origin, 2, u64(1) << 31);
  P.ctx.d = 1;
  P.k = static_cast<int>(uint_field(j, "rank", origin, 0, 1 << 12));
  const size_t k = static_cast<size_t>(P.k);
  if (auto it = j.find("relations"); it != j.end())
    P.relations = parse_poly_columns(P.ctx, *it, k, "relations", text, origin);
  const json& gram = field(j, "gram", origin);
  if (!gram.is_array() || gram.size() != k)
    fail(origin, "field 'gram' must be an array of " + std::to_string(k) +
                     " rows");
  for (size_t i = 0; i < k; ++i) {
    const json& row = gram[i];
    const std::string where = "gram[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != k)
      fail(origin,
           where + ": expected an array of " + std::to_string(k) + " entries");
    PolyVec r;
    for (size_t c = 0; c < k; ++c)
      r.push_back(parse_poly_cell(P.ctx, row[c],
                                  where + "[" + std::to_string(c) + "]", text,
                                  origin));
    P.gram.push_back(std::move(r));
  }

  Modulus mod(P.ctx.n);
  if (mod.is_prime_power()) {
    QsValidation v = qs_validate(P);
    if (!v.valid) {
      std::string what = origin + ": module invariants violated:";
      for (const auto& f : v.failures) what += " [" + f + "]";
      throw Error(ErrorKind::validation_error, what);
    }
  }
  return P;
}

QuasiSymplectic1D load_qs_file(const std::string& path) {
  return parse_qs_text(read_file(path), path);
}

QuasiSymplectic1D resolve_qs_spec(const std::string& spec) {
  if (spec.rfind("qs:", 0) == 0) {
    const std::string name = spec.substr(3);
    if (name == "z4demo") return builtin_qs_z4demo();
    throw Error(ErrorKind::validation_error,
                "unknown built-in quasi-symplectic module: " + name);
  }
  return load_qs_file(spec);
}

}  // namespace stabmod
