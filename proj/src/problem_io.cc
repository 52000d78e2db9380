// Copyright 2026 The sqcqp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqcqp/problem_io.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>
#include <vector>

#include "sqcqp/errors.h"

namespace sqcqp {
namespace {

using Json = nlohmann::json;

constexpr double kSymmetryTolerance = 1e-12;

// Collects every violation instead of stopping at the first.
class Validator {
 public:
  void Fail(const std::string& message) { errors_.push_back(message); }
  bool ok() const { return errors_.empty(); }

  void ThrowIfFailed() const {
    if (ok()) return;
    std::string joined;
    for (const auto& e : errors_) {
      if (!joined.empty()) joined += "; ";
      joined += e;
    }
    throw Error(ErrorCode::kValidation, joined);
  }

  std::optional<double> Number(const Json& parent, const std::string& key,
                               const std::string& where) {
    if (!parent.contains(key)) {
      Fail(where + "." + key + " is missing");
      return std::nullopt;
    }
    const Json& v = parent.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      Fail(where + "." + key + " must be a finite number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<Vector> Array(const Json& parent, const std::string& key,
                              const std::string& where, int expected) {
    if (!parent.contains(key)) {
      Fail(where + "." + key + " is missing");
      return std::nullopt;
    }
    const Json& v = parent.at(key);
    if (!v.is_array()) {
      Fail(where + "." + key + " must be an array");
      return std::nullopt;
    }
    if (expected >= 0 && static_cast<int>(v.size()) != expected) {
      Fail(where + "." + key + " has length " + std::to_string(v.size()) +
           ", expected " + std::to_string(expected));
      return std::nullopt;
    }
    Vector out(static_cast<int>(v.size()));
    bool good = true;
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
        Fail(where + "." + key + "[" + std::to_string(i) +
             "] must be a finite number");
        good = false;
      } else {
        out[static_cast<int>(i)] = v[i].get<double>();
      }
    }
    if (!good) return std::nullopt;
    return out;
  }

  std::optional<Matrix> SquareMatrix(const Json& parent, const std::string& key,
                                     const std::string& where, int n) {
    if (!parent.contains(key)) {
      Fail(where + "." + key + " is missing");
      return std::nullopt;
    }
    const Json& v = parent.at(key);
    if (!v.is_array() || static_cast<int>(v.size()) != n) {
      Fail(where + "." + key + " must be an array of " + std::to_string(n) +
           " rows");
      return std::nullopt;
    }
    Matrix out(n, n);
    bool good = true;
    for (int i = 0; i < n; ++i) {
      auto row = Array(v, static_cast<size_t>(i), where + "." + key, n);
      if (!row) {
        good = false;
        continue;
      }
      out.row(i) = row->transpose();
    }
    if (!good) return std::nullopt;
    if ((out - out.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
      Fail(where + "." + key + " is not symmetric");
      return std::nullopt;
    }
    return out;
  }

 private:
  std::optional<Vector> Array(const Json& arr, size_t index,
                              const std::string& where, int expected) {
    const Json& v = arr[index];
    const std::string name = where + "[" + std::to_string(index) + "]";
    if (!v.is_array() || static_cast<int>(v.size()) != expected) {
      Fail(name + " must be an array of length " + std::to_string(expected));
      return std::nullopt;
    }
    Vector out(expected);
    for (int i = 0; i < expected; ++i) {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
        Fail(name + "[" + std::to_string(i) + "] must be a finite number");
        return std::nullopt;
      }
      out[i] = v[i].get<double>();
    }
    return out;
  }

  std::vector<std::string> errors_;
};

std::optional<ScalarQuadratic> ReadScalar(Validator& val, const Json& obj,
                                          const std::string& where, int n) {
  if (!obj.is_object()) {
    val.Fail(where + " must be an object");
    return std::nullopt;
  }
  auto a = val.Number(obj, "a", where);
  auto b = val.Array(obj, "b", where, n);
  auto c = val.Number(obj, "c", where);
  if (!a || !b || !c) return std::nullopt;
  return ScalarQuadratic{*a, *b, *c};
}

std::optional<GeneralQuadratic> ReadGeneral(Validator& val, const Json& obj,
                                            const std::string& where, int n) {
  if (!obj.is_object()) {
    val.Fail(where + " must be an object");
    return std::nullopt;
  }
  auto a = val.SquareMatrix(obj, "A", where, n);
  auto b = val.Array(obj, "b", where, n);
  auto c = val.Number(obj, "c", where);
  if (!a || !b || !c) return std::nullopt;
  return GeneralQuadratic{*a, *b, *c};
}

std::pair<int, int> LineAndColumn(std::string_view text, size_t byte) {
  int line = 1;
  int column = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void WriteJson(const nlohmann::ordered_json& j, int indent, int depth,
               std::string& out) {
  const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += nlohmann::ordered_json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        WriteJson(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat &= !e.is_structured();
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) {
          out += nl;
          out += pad;
        }
        first = false;
        WriteJson(e, indent, depth + 1, out);
      }
      if (!flat && !j.empty()) {
        out += nl;
        out += close_pad;
      }
      out += "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? FormatDouble(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string FormatDouble(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string DumpJson(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  WriteJson(j, indent, 0, out);
  return out;
}

nlohmann::ordered_json VectorToJson(const Vector& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

ProblemFile ParseProblem(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = LineAndColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) +
                                       ", column " + std::to_string(column) +
                                       ": " + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kValidation, "top level must be a JSON object");
  }

  Validator val;
  if (!doc.contains("version") || !doc["version"].is_number_integer() ||
      doc["version"].get<int64_t>() != 1) {
    val.Fail("version must be 1");
  }
  int n = -1;
  if (!doc.contains("n") || !doc["n"].is_number_integer() ||
      doc["n"].get<int64_t>() < 1 || doc["n"].get<int64_t>() > 1'000'000) {
    val.Fail("n must be a positive integer");
  } else {
    n = static_cast<int>(doc["n"].get<int64_t>());
  }
  // Dimension checks against n are meaningless without n.
  if (n < 0) val.ThrowIfFailed();

  bool matrix_mode = false;
  if (doc.contains("matrix_mode")) {
    if (!doc["matrix_mode"].is_boolean()) {
      val.Fail("matrix_mode must be a boolean");
    } else {
      matrix_mode = doc["matrix_mode"].get<bool>();
    }
  }
  if (doc.contains("objective") && doc["objective"].is_object() &&
      doc["objective"].contains("A")) {
    matrix_mode = true;
  }

  const Json empty = Json::array();
  const Json& cons = doc.contains("constraints") ? doc["constraints"] : empty;
  if (!doc.contains("constraints") || !cons.is_array()) {
    val.Fail("constraints must be an array");
  } else if (!matrix_mode && cons.empty()) {
    val.Fail("constraints must not be empty");
  }
  if (!doc.contains("objective")) val.Fail("objective is missing");

  std::optional<std::variant<Problem, GeneralProblem>> problem;
  int m = cons.is_array() ? static_cast<int>(cons.size()) : 0;
  if (matrix_mode) {
    std::optional<GeneralQuadratic> obj;
    if (doc.contains("objective")) {
      obj = ReadGeneral(val, doc["objective"], "objective", n);
    }
    std::vector<GeneralQuadratic> cs;
    for (int k = 0; k < m; ++k) {
      auto q = ReadGeneral(val, cons[k], "constraints[" + std::to_string(k) + "]", n);
      if (q) cs.push_back(std::move(*q));
    }
    val.ThrowIfFailed();
    problem.emplace(std::in_place_type<GeneralProblem>, std::move(*obj),
                    std::move(cs));
  } else {
    std::optional<ScalarQuadratic> obj;
    if (doc.contains("objective")) {
      obj = ReadScalar(val, doc["objective"], "objective", n);
    }
    std::vector<ScalarQuadratic> cs;
    for (int k = 0; k < m; ++k) {
      auto q = ReadScalar(val, cons[k], "constraints[" + std::to_string(k) + "]", n);
      if (q) cs.push_back(std::move(*q));
    }
    val.ThrowIfFailed();
    problem.emplace(std::in_place_type<Problem>, std::move(*obj), std::move(cs));
  }

  std::optional<CandidateBlock> candidate;
  if (doc.contains("candidate")) {
    const Json& cand = doc["candidate"];
    if (!cand.is_object()) {
      val.Fail("candidate must be an object");
    } else {
      auto x = val.Array(cand, "x", "candidate", n);
      auto gamma = val.Array(cand, "gamma", "candidate", m);
      std::optional<double> gamma0;
      if (cand.contains("gamma0")) gamma0 = val.Number(cand, "gamma0", "candidate");
      if (gamma) {
        for (int k = 0; k < gamma->size(); ++k) {
          if ((*gamma)[k] < 0.0) {
            val.Fail("candidate.gamma[" + std::to_string(k) + "] is negative");
          }
        }
      }
      if (gamma0 && *gamma0 < 0.0) val.Fail("candidate.gamma0 is negative");
      if (x && gamma) candidate = CandidateBlock{*x, Multipliers{*gamma, gamma0}};
    }
  }
  val.ThrowIfFailed();
  return ProblemFile{std::move(*problem), std::move(candidate)};
}

nlohmann::ordered_json ProblemToJson(
    const Problem& p, const std::optional<CandidateBlock>& candidate) {
  auto quadratic = [](const ScalarQuadratic& q) {
    nlohmann::ordered_json j;
    j["a"] = q.a;
    j["b"] = VectorToJson(q.b);
    j["c"] = q.c;
    return j;
  };
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["n"] = p.n();
  j["objective"] = quadratic(p.objective());
  j["constraints"] = nlohmann::ordered_json::array();
  for (const auto& f : p.constraints()) j["constraints"].push_back(quadratic(f));
  if (candidate) {
    nlohmann::ordered_json c;
    c["x"] = VectorToJson(candidate->x);
    c["gamma"] = VectorToJson(candidate->multipliers.gamma);
    if (candidate->multipliers.gamma0) c["gamma0"] = *candidate->multipliers.gamma0;
    j["candidate"] = c;
  }
  return j;
}

}  // namespace sqcqp
