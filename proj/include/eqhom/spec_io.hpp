#pragma once

// JSON computation specs and result documents.
//
// A spec names a group G, an optional acting group Q with an action, the
// coefficients, a task and a degree range. Integers may be JSON numbers or
// decimal strings (for values beyond 64 bits). Matrices are lists of rows;
// relation matrices are lists of columns, matching FinAb.

#include "eqhom/extensions.hpp"
#include "eqhom/finab.hpp"
#include "eqhom/finite_group.hpp"
#include "eqhom/qg_module.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace eqhom {

using Json = nlohmann::ordered_json;

inline auto integer_to_json(const Integer& x) -> Json {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

inline auto divisors_to_json(const IntVector& d) -> Json {
  Json out = Json::array();
  for (const auto& x : d) out.push_back(integer_to_json(x));
  return out;
}

/// Field-level reader that prefixes diagnostics with a JSON pointer.
class SpecReader {
 public:
  SpecReader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

  [[nodiscard]] auto node() const -> const Json& { return node_; }
  [[nodiscard]] auto path() const -> const std::string& { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("spec " + (path_.empty() ? std::string("/") : path_) + ": " + what);
  }

  [[nodiscard]] auto has(const std::string& key) const -> bool {
    return node_.is_object() && node_.contains(key);
  }

  [[nodiscard]] auto at(const std::string& key) const -> SpecReader {
    if (!node_.is_object()) fail("expected an object");
    if (!node_.contains(key)) fail("missing field \"" + key + "\"");
    return {node_.at(key), path_ + "/" + key};
  }

  [[nodiscard]] auto at(std::size_t i) const -> SpecReader {
    return {node_.at(i), path_ + "/" + std::to_string(i)};
  }

  [[nodiscard]] auto size() const -> std::size_t {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

  [[nodiscard]] auto string() const -> std::string {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  [[nodiscard]] auto integer() const -> Integer {
    if (node_.is_number_integer()) {
      if (node_.is_number_unsigned()) return Integer(std::to_string(node_.get<std::uint64_t>()));
      return Integer(std::to_string(node_.get<std::int64_t>()));
    }
    if (node_.is_string()) {
      Integer x;
      if (x.set_str(node_.get<std::string>(), 10) != 0) fail("not a decimal integer");
      return x;
    }
    fail("expected an integer");
  }

  [[nodiscard]] auto count() const -> std::size_t {
    Integer x = integer();
    if (x < 0 || !x.fits_ulong_p()) fail("expected a nonnegative integer");
    return x.get_ui();
  }

  [[nodiscard]] auto integers() const -> IntVector {
    IntVector v;
    for (std::size_t i = 0; i < size(); ++i) v.push_back(at(i).integer());
    return v;
  }

  [[nodiscard]] auto counts() const -> std::vector<std::size_t> {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < size(); ++i) v.push_back(at(i).count());
    return v;
  }

 private:
  const Json& node_;
  std::string path_;
};

struct GroupSpec {
  std::string kind = "cyclic";  // cyclic | dihedral | product | table
  std::size_t n = 1;
  std::vector<GroupSpec> factors;
  std::vector<std::vector<Element>> table;

  [[nodiscard]] auto to_json() const -> Json {
    Json j;
    j["kind"] = kind;
    if (kind == "cyclic" || kind == "dihedral") j["n"] = n;
    if (kind == "product") {
      j["factors"] = Json::array();
      for (const auto& f : factors) j["factors"].push_back(f.to_json());
    }
    if (kind == "table") j["table"] = table;
    return j;
  }

  static auto from_json(const SpecReader& r) -> GroupSpec {
    GroupSpec g;
    g.kind = r.at("kind").string();
    if (g.kind == "cyclic" || g.kind == "dihedral") {
      g.n = r.at("n").count();
      if (g.n == 0) r.at("n").fail("order must be positive");
    } else if (g.kind == "product") {
      SpecReader fs = r.at("factors");
      if (fs.size() == 0) fs.fail("need at least one factor");
      for (std::size_t i = 0; i < fs.size(); ++i) g.factors.push_back(from_json(fs.at(i)));
    } else if (g.kind == "table") {
      SpecReader t = r.at("table");
      for (std::size_t i = 0; i < t.size(); ++i) g.table.push_back(t.at(i).counts());
    } else {
      r.at("kind").fail("unknown group kind \"" + g.kind + "\"");
    }
    return g;
  }

  [[nodiscard]] auto build() const -> FiniteGroup {
    if (kind == "cyclic") return cyclic(n);
    if (kind == "dihedral") return dihedral(n);
    if (kind == "product") {
      FiniteGroup g = factors.front().build();
      for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, factors[i].build());
      return g;
    }
    return FiniteGroup(table);
  }
};

struct ActionSpec {
  std::string kind = "trivial";  // trivial | inversion | generator-images
  std::vector<Element> generators;
  std::vector<std::vector<Element>> images;

  [[nodiscard]] auto to_json() const -> Json {
    Json j;
    j["kind"] = kind;
    if (kind == "generator-images") {
      j["generators"] = generators;
      j["images"] = images;
    }
    return j;
  }

  static auto from_json(const SpecReader& r) -> ActionSpec {
    ActionSpec a;
    a.kind = r.at("kind").string();
    if (a.kind == "generator-images") {
      a.generators = r.at("generators").counts();
      SpecReader im = r.at("images");
      for (std::size_t i = 0; i < im.size(); ++i) a.images.push_back(im.at(i).counts());
    } else if (a.kind != "trivial" && a.kind != "inversion") {
      r.at("kind").fail("unknown action kind \"" + a.kind + "\"");
    }
    return a;
  }
};

struct CoefficientSpec {
  std::string kind = "integers";  // integers | mod | module
  Integer modulus = 0;
  std::size_t rank = 0;
  std::vector<IntVector> relations;              // columns
  std::vector<std::vector<IntVector>> g_action;  // per element of G, rows; empty means trivial
  std::vector<std::vector<IntVector>> q_action;  // per element of Q

  [[nodiscard]] auto to_json() const -> Json {
    Json j;
    j["kind"] = kind;
    if (kind == "mod") j["modulus"] = integer_to_json(modulus);
    if (kind == "module") {
      j["rank"] = rank;
      auto mats = [](const std::vector<IntVector>& rows) {
        Json m = Json::array();
        for (const auto& r : rows) m.push_back(divisors_to_json(r));
        return m;
      };
      j["relations"] = mats(relations);
      auto family = [&](const std::vector<std::vector<IntVector>>& f) -> Json {
        if (f.empty()) return "trivial";
        Json a = Json::array();
        for (const auto& m : f) a.push_back(mats(m));
        return a;
      };
      j["g_action"] = family(g_action);
      j["q_action"] = family(q_action);
    }
    return j;
  }

  static auto from_json(const SpecReader& r) -> CoefficientSpec {
    CoefficientSpec c;
    c.kind = r.at("kind").string();
    if (c.kind == "mod") {
      c.modulus = r.at("modulus").integer();
      if (c.modulus < 0) r.at("modulus").fail("modulus must be nonnegative");
      if (c.modulus == 0) c.kind = "integers";
    } else if (c.kind == "module") {
      c.rank = r.at("rank").count();
      if (r.has("relations")) {
        SpecReader rel = r.at("relations");
        for (std::size_t i = 0; i < rel.size(); ++i) {
          c.relations.push_back(rel.at(i).integers());
          if (c.relations.back().size() != c.rank) rel.at(i).fail("relation needs rank entries");
        }
      }
      auto family = [&](const std::string& key) {
        std::vector<std::vector<IntVector>> out;
        if (!r.has(key)) return out;
        SpecReader f = r.at(key);
        if (f.node().is_string()) {
          if (f.string() != "trivial") f.fail("expected \"trivial\" or a list of matrices");
          return out;
        }
        for (std::size_t i = 0; i < f.size(); ++i) {
          SpecReader m = f.at(i);
          if (m.size() != c.rank) m.fail("matrix needs rank rows");
          std::vector<IntVector> rows;
          for (std::size_t k = 0; k < m.size(); ++k) {
            rows.push_back(m.at(k).integers());
            if (rows.back().size() != c.rank) m.at(k).fail("matrix needs rank columns");
          }
          out.push_back(std::move(rows));
        }
        return out;
      };
      c.g_action = family("g_action");
      c.q_action = family("q_action");
    } else if (c.kind != "integers") {
      r.at("kind").fail("unknown coefficient kind \"" + c.kind + "\"");
    }
    return c;
  }

  [[nodiscard]] auto underlying() const -> FinAb {
    if (kind == "integers") return FinAb::free(1);
    if (kind == "mod") return FinAb::cyclic(modulus);
    return FinAb(rank, IntMatrix::from_columns(rank, relations));
  }

  [[nodiscard]] auto is_trivial_module() const -> bool {
    return kind != "module" || (g_action.empty() && q_action.empty());
  }
};

struct ComputationSpec {
  GroupSpec group;
  std::optional<GroupSpec> acting_group;
  ActionSpec action;
  CoefficientSpec coefficients;
  std::string task;
  std::size_t min_degree = 0;
  std::size_t max_degree = 4;
  std::vector<std::vector<IntVector>> factor_set;        // [x][y] -> K coordinates
  std::vector<std::vector<IntVector>> other_factor_set;  // second operand for equivalence

  [[nodiscard]] auto to_json() const -> Json {
    Json j;
    j["group"] = group.to_json();
    if (acting_group) j["acting_group"] = acting_group->to_json();
    j["action"] = action.to_json();
    j["coefficients"] = coefficients.to_json();
    if (!task.empty()) j["task"] = task;
    j["min_degree"] = min_degree;
    j["max_degree"] = max_degree;
    auto table = [](const std::vector<std::vector<IntVector>>& t) {
      Json out = Json::array();
      for (const auto& row : t) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(divisors_to_json(v));
        out.push_back(r);
      }
      return out;
    };
    if (!factor_set.empty()) j["factor_set"] = table(factor_set);
    if (!other_factor_set.empty()) j["other_factor_set"] = table(other_factor_set);
    return j;
  }

  static auto from_json(const Json& root) -> ComputationSpec {
    SpecReader r(root, "");
    if (!root.is_object()) r.fail("expected a top-level object");
    ComputationSpec s;
    s.group = GroupSpec::from_json(r.at("group"));
    if (r.has("acting_group")) s.acting_group = GroupSpec::from_json(r.at("acting_group"));
    if (r.has("action")) s.action = ActionSpec::from_json(r.at("action"));
    if (r.has("coefficients")) s.coefficients = CoefficientSpec::from_json(r.at("coefficients"));
    if (r.has("task")) s.task = r.at("task").string();
    if (r.has("min_degree")) s.min_degree = r.at("min_degree").count();
    if (r.has("max_degree")) s.max_degree = r.at("max_degree").count();
    if (s.min_degree > s.max_degree) r.at("min_degree").fail("exceeds max_degree");
    auto table = [](const SpecReader& t) {
      std::vector<std::vector<IntVector>> out;
      for (std::size_t x = 0; x < t.size(); ++x) {
        SpecReader row = t.at(x);
        std::vector<IntVector> vals;
        for (std::size_t y = 0; y < row.size(); ++y) vals.push_back(row.at(y).integers());
        out.push_back(std::move(vals));
      }
      return out;
    };
    if (r.has("factor_set")) s.factor_set = table(r.at("factor_set"));
    if (r.has("other_factor_set")) s.other_factor_set = table(r.at("other_factor_set"));
    return s;
  }

  [[nodiscard]] auto build_q() const -> FiniteGroup {
    if (acting_group) return acting_group->build();
    return action.kind == "inversion" ? cyclic(2) : cyclic(1);
  }

  [[nodiscard]] auto build_action() const -> GroupAction {
    FiniteGroup g = group.build();
    FiniteGroup q = build_q();
    if (action.kind == "trivial") return GroupAction::trivial(q, g);
    if (action.kind == "inversion") {
      require(q.order() == 2, "spec /action: inversion needs an acting group of order 2");
      return inversion_action(g);
    }
    return action_from_generator_images(q, g, action.generators, action.images);
  }

  /// The coefficient module; plain coefficients become trivial modules.
  [[nodiscard]] auto build_module() const -> QGModule {
    GroupAction a = build_action();
    if (coefficients.is_trivial_module()) return QGModule::trivial(a, coefficients.underlying());
    auto mats = [&](const std::vector<std::vector<IntVector>>& f, std::size_t count,
                    const std::string& key) {
      const std::size_t r = coefficients.rank;
      if (f.empty()) return std::vector<IntMatrix>(count, IntMatrix::identity(r));
      require(f.size() == count, "spec /coefficients/" + key + ": need one matrix per element");
      std::vector<IntMatrix> out;
      for (const auto& rows : f) {
        IntMatrix m(r, r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t k = 0; k < r; ++k) m(i, k) = rows[i][k];
        out.push_back(std::move(m));
      }
      return out;
    };
    return {a, coefficients.underlying(), mats(coefficients.g_action, a.g_group().order(), "g_action"),
            mats(coefficients.q_action, a.q_group().order(), "q_action")};
  }

  [[nodiscard]] static auto build_factor_set(const QGModule& k,
                                             const std::vector<std::vector<IntVector>>& t,
                                             const std::string& key) -> FactorSet {
    FactorSet f = FactorSet::zero(k);
    const std::size_t n = k.g_group().order();
    require(t.size() == n, "spec /" + key + ": need |H| rows");
    for (std::size_t x = 0; x < n; ++x) {
      require(t[x].size() == n, "spec /" + key + "/" + std::to_string(x) + ": need |H| entries");
      for (std::size_t y = 0; y < n; ++y) {
        require(t[x][y].size() == k.rank(), "spec /" + key + "/" + std::to_string(x) + "/" +
                                                std::to_string(y) + ": need rank coordinates");
        f.values[x][y] = t[x][y];
      }
    }
    return f;
  }
};

/// Line and column (1-based) of a byte offset.
inline auto locate(const std::string& text, std::size_t byte) -> std::pair<std::size_t, std::size_t> {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline auto parse_json(const std::string& text, const std::string& source) -> Json {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw InvalidInput(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                       ": malformed JSON");
  }
}

inline auto parse_spec(const std::string& text, const std::string& source) -> ComputationSpec {
  Json j = parse_json(text, source);
  try {
    return ComputationSpec::from_json(j);
  } catch (const InvalidInput& e) {
    throw InvalidInput(source + ": " + e.what());
  }
}

/// Output of one CLI computation.
struct ResultDocument {
  Json spec;
  std::string task;
  std::vector<std::size_t> degrees;
  std::vector<IntVector> divisors;  // one canonical list per degree; 0 is a Z factor
  Json details = Json::object();
  Json verdicts = Json::object();  // name -> bool
  bool hypothesis_violated = false;
  std::optional<double> timing_ms;

  [[nodiscard]] auto to_json() const -> Json {
    Json j;
    j["spec"] = spec;
    j["task"] = task;
    j["degrees"] = degrees;
    Json d = Json::array();
    for (const auto& v : divisors) d.push_back(divisors_to_json(v));
    j["divisors"] = d;
    j["details"] = details;
    j["verdicts"] = verdicts;
    j["hypothesis_violated"] = hypothesis_violated;
    if (timing_ms) j["timing_ms"] = *timing_ms;
    return j;
  }

  static auto from_json(const Json& root) -> ResultDocument {
    SpecReader r(root, "");
    ResultDocument out;
    out.spec = root.at("spec");
    out.task = r.at("task").string();
    out.degrees = r.at("degrees").counts();
    SpecReader d = r.at("divisors");
    for (std::size_t i = 0; i < d.size(); ++i) out.divisors.push_back(d.at(i).integers());
    out.details = root.at("details");
    out.verdicts = root.at("verdicts");
    out.hypothesis_violated = root.at("hypothesis_violated").get<bool>();
    if (root.contains("timing_ms")) out.timing_ms = root.at("timing_ms").get<double>();
    return out;
  }
};

}  // namespace eqhom
