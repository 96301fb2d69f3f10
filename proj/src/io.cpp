#include "nabla/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "nabla/perm.hpp"

namespace nabla {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);  // throws with line/column on malformed input
}

const json& field(const json& j, const std::string& name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) throw std::runtime_error(where + " is missing field '" + name + "'");
  return *it;
}

int resolve(const std::map<std::string, int>& table, const json& j,
            const std::string& where) {
  if (!j.is_string()) throw std::runtime_error(where + " must be a name");
  auto it = table.find(j.get<std::string>());
  if (it == table.end())
    throw std::runtime_error(where + " references unknown name '" +
                             j.get<std::string>() + "'");
  return it->second;
}

// "dir/two_object.json" -> "two_object"; used as the instance name so that
// report check ids stay free of path separators.
std::string file_stem(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::size_t start = slash == std::string::npos ? 0 : slash + 1;
  std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || dot <= start) dot = path.size();
  return path.substr(start, dot - start);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

LoadedMulticat load_multicat(const std::string& path, int arity_bound) {
  json j = read_json(path);

  int max_arity = arity_bound;
  for (const json& m : field(j, "morphisms", path))
    max_arity = std::max(max_arity,
                         static_cast<int>(field(m, "inputs", "morphisms entry").size()));

  LoadedMulticat out{FinMulticategory(max_arity, file_stem(path)), {}, false};
  FinMulticategory& M = out.cat;

  std::map<std::string, int> objects;
  for (const json& o : field(j, "objects", path)) {
    if (!o.is_string()) throw std::runtime_error("objects entries must be names");
    objects[o.get<std::string>()] = M.add_object(o.get<std::string>());
  }

  std::map<std::string, int> morphisms;
  for (const json& m : field(j, "morphisms", path)) {
    const json& name = field(m, "name", "morphisms entry");
    std::vector<int> inputs;
    for (const json& i : field(m, "inputs", "morphisms entry"))
      inputs.push_back(resolve(objects, i, "morphisms." + name.get<std::string>() + ".inputs"));
    int output = resolve(objects, field(m, "output", "morphisms entry"),
                         "morphisms." + name.get<std::string>() + ".output");
    morphisms[name.get<std::string>()] =
        M.add_morphism(std::move(inputs), output, name.get<std::string>());
  }

  for (const auto& [obj, mor] : field(j, "identities", path).items())
    M.set_identity(resolve(objects, json(obj), "identities key"),
                   resolve(morphisms, mor, "identities." + obj));

  for (const json& c : field(j, "compositions", path)) {
    int outer = resolve(morphisms, field(c, "outer", "compositions entry"),
                        "compositions.outer");
    std::vector<int> inners;
    for (const json& i : field(c, "inners", "compositions entry"))
      inners.push_back(resolve(morphisms, i, "compositions.inners"));
    M.set_composite(outer, inners,
                    resolve(morphisms, field(c, "result", "compositions entry"),
                            "compositions.result"));
  }
  M.finalize();

  std::map<std::pair<int, Perm>, int> table;
  if (j.contains("symmetry")) {
    out.has_symmetry = true;
    for (const json& s : j["symmetry"]) {
      int f = resolve(morphisms, field(s, "morphism", "symmetry entry"), "symmetry.morphism");
      std::vector<int> img;
      for (const json& v : field(s, "perm", "symmetry entry")) {
        if (!v.is_number_integer())
          throw std::runtime_error("symmetry.perm entries must be 1-indexed integers");
        img.push_back(v.get<int>());
      }
      table[{f, make_perm(img)}] =
          resolve(morphisms, field(s, "result", "symmetry entry"), "symmetry.result");
    }
  }
  out.action.act = [table](int f, const Perm& x) {
    auto it = table.find({f, x});
    if (it != table.end()) return it->second;
    return x.is_identity() ? f : -1;
  };
  return out;
}

FinMonoid load_monoid(const std::string& path) {
  json j = read_json(path);
  FinMonoid M;
  M.name = file_stem(path);

  std::map<std::string, int> elements;
  for (const json& e : field(j, "elements", path)) {
    if (!e.is_string()) throw std::runtime_error("elements entries must be names");
    elements[e.get<std::string>()] = static_cast<int>(M.elements.size());
    M.elements.push_back(e.get<std::string>());
  }
  M.unit = resolve(elements, field(j, "unit", path), "unit");

  int k = M.size();
  M.table.assign(k, std::vector<int>(k, -1));
  for (const auto& [x, row] : field(j, "table", path).items()) {
    int xi = resolve(elements, json(x), "table key");
    for (const auto& [y, v] : row.items())
      M.table[xi][resolve(elements, json(y), "table." + x)] =
          resolve(elements, v, "table." + x + "." + y);
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (M.table[a][b] < 0)
        throw std::runtime_error("table is missing the product " + M.elements[a] + "*" +
                                 M.elements[b]);
  return M;
}

void write_dot(const FinCategory& c, std::ostream& os) {
  os << "digraph category {\n";
  for (int o = 0; o < c.object_count(); ++o)
    os << "  o" << o << " [label=\"" << dot_escape(c.object_label(o)) << "\"];\n";
  for (int m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    os << "  o" << c.src(m) << " -> o" << c.tgt(m) << " [label=\""
       << dot_escape(c.morphism_label(m)) << "\"];\n";
  }
  os << "}\n";
}

std::string dot_text(const FinCategory& c) {
  std::ostringstream os;
  write_dot(c, os);
  return os.str();
}

}  // namespace nabla
