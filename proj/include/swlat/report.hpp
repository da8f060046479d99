#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace swlat {

// Minimal ordered JSON value for machine-readable reports. Keys keep
// insertion order and doubles are serialized at 17 significant digits, so
// identical inputs produce byte-identical report files. Timestamps and
// other environment data belong in a separate metadata document.
class JsonValue {
public:
  static JsonValue object();
  static JsonValue array();
  JsonValue() : kind_(Kind::null) {}
  JsonValue(bool b) : kind_(Kind::boolean), bool_(b) {}
  JsonValue(std::int64_t i) : kind_(Kind::integer), int_(i) {}
  JsonValue(int i) : JsonValue(static_cast<std::int64_t>(i)) {}
  JsonValue(double d) : kind_(Kind::real), real_(d) {}
  JsonValue(std::string s) : kind_(Kind::string), str_(std::move(s)) {}
  JsonValue(const char* s) : JsonValue(std::string(s)) {}

  JsonValue& set(const std::string& key, JsonValue v);  // objects
  JsonValue& push(JsonValue v);                         // arrays

  std::string dump(int indent = 0) const;

private:
  enum class Kind { null, boolean, integer, real, string, array, object };
  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  double real_ = 0.0;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> fields_;

  void write(std::string& out, int indent, int depth) const;
};

std::string format_double_17(double x);

// Writes report JSON (deterministic) and a sibling .meta.json carrying the
// timestamp. Returns the report path.
std::string write_report(const JsonValue& report, const std::string& out_dir, const std::string& name);

}  // namespace swlat
