#pragma once

#include <memory>
#include <string>
#include <vector>

namespace dgeo {

/// Minimal JSON value with insertion-ordered object keys and fixed float
/// formatting (17 significant digits), so reports are byte-stable and
/// diffable across runs.
class Report {
 public:
  static Report object();
  static Report array();
  static Report string(std::string v);
  static Report number(double v);
  static Report integer(long long v);
  static Report boolean(bool v);

  Report& set(const std::string& key, Report v);  // object only
  Report& push(Report v);                         // array only

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Object, Array, String, Number, Integer, Bool };
  Kind kind_ = Kind::Object;
  std::string str_;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::vector<std::pair<std::string, Report>> members_;
  std::vector<Report> items_;

  void write(std::string& out, int indent, int depth) const;
};

std::string format_double(double v);

}  // namespace dgeo
