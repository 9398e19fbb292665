#include <sstream>

#include "lks/cli.hpp"

namespace lks {

namespace {

std::string scalar(const Report& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

bool all_scalars(const Report& arr) {
  for (const auto& x : arr) {
    if (x.is_object() || x.is_array()) return false;
  }
  return true;
}

void render_value(std::ostringstream& out, const Report& v, int indent);

void render_object(std::ostringstream& out, const Report& obj, int indent, bool first_inline) {
  bool first = true;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!(first && first_inline)) out << std::string(static_cast<std::size_t>(indent), ' ');
    first = false;
    out << it.key() << ':';
    const Report& v = it.value();
    if (v.is_object()) {
      if (v.empty()) {
        out << " {}\n";
      } else {
        out << '\n';
        render_object(out, v, indent + 2, false);
      }
    } else if (v.is_array() && !(v.empty() || all_scalars(v))) {
      out << '\n';
      render_value(out, v, indent + 2);
    } else {
      out << ' ';
      render_value(out, v, indent);
    }
  }
}

void render_value(std::ostringstream& out, const Report& v, int indent) {
  if (v.is_array()) {
    if (v.empty() || all_scalars(v)) {
      out << '[';
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
      out << "]\n";
      return;
    }
    for (const auto& item : v) {
      out << std::string(static_cast<std::size_t>(indent), ' ') << "- ";
      if (item.is_object() && !item.empty()) {
        render_object(out, item, indent + 2, true);
      } else if (item.is_array()) {
        out << '\n';
        render_value(out, item, indent + 2);
      } else {
        out << scalar(item) << '\n';
      }
    }
    return;
  }
  out << scalar(v) << '\n';
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream out;
  if (report.is_object()) {
    render_object(out, report, 0, false);
  } else {
    render_value(out, report, 0);
  }
  return out.str();
}

}  // namespace lks
