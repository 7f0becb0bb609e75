#include "dgeo/report.hpp"

#include <cmath>
#include <cstdio>

namespace dgeo {

std::string format_double(double v) {
  if (!std::isfinite(v)) return v > 0 ? "1e9999" : (v < 0 ? "-1e9999" : "null");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Report Report::object() {
  Report r;
  r.kind_ = Kind::Object;
  return r;
}

Report Report::array() {
  Report r;
  r.kind_ = Kind::Array;
  return r;
}

Report Report::string(std::string v) {
  Report r;
  r.kind_ = Kind::String;
  r.str_ = std::move(v);
  return r;
}

Report Report::number(double v) {
  Report r;
  r.kind_ = Kind::Number;
  r.num_ = v;
  return r;
}

Report Report::integer(long long v) {
  Report r;
  r.kind_ = Kind::Integer;
  r.int_ = v;
  return r;
}

Report Report::boolean(bool v) {
  Report r;
  r.kind_ = Kind::Bool;
  r.bool_ = v;
  return r;
}

Report& Report::set(const std::string& key, Report v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}

Report& Report::push(Report v) {
  items_.push_back(std::move(v));
  return *this;
}

namespace {

void escape(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void pad(std::string& out, int indent, int depth) {
  if (indent > 0) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
  }
}

}  // namespace

void Report::write(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::Object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : members_) {
        if (!first) out += ',';
        first = false;
        pad(out, indent, depth + 1);
        escape(k, out);
        out += indent > 0 ? ": " : ":";
        v.write(out, indent, depth + 1);
      }
      if (!members_.empty()) pad(out, indent, depth);
      out += '}';
      break;
    }
    case Kind::Array: {
      out += '[';
      bool first = true;
      for (const Report& v : items_) {
        if (!first) out += ',';
        first = false;
        pad(out, indent, depth + 1);
        v.write(out, indent, depth + 1);
      }
      if (!items_.empty()) pad(out, indent, depth);
      out += ']';
      break;
    }
    case Kind::String:
      escape(str_, out);
      break;
    case Kind::Number:
      out += format_double(num_);
      break;
    case Kind::Integer:
      out += std::to_string(int_);
      break;
    case Kind::Bool:
      out += bool_ ? "true" : "false";
      break;
  }
}

std::string Report::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

}  // namespace dgeo
