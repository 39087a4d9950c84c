#include "run_report.hpp"

#include <cstdio>

#include "json.hpp"

namespace frechet::cli {

void RunReport::add(std::string key, std::string value) {
  fields_.push_back({std::move(key), Kind::text, std::move(value)});
}

void RunReport::add(std::string key, const char* value) {
  add(std::move(key), std::string(value));
}

void RunReport::add(std::string key, double value) {
  Field f{std::move(key), Kind::number, {}};
  f.num = value;
  fields_.push_back(std::move(f));
}

void RunReport::add(std::string key, std::size_t value) {
  Field f{std::move(key), Kind::integer, {}};
  f.count = value;
  fields_.push_back(std::move(f));
}

void RunReport::add(std::string key, bool value) {
  Field f{std::move(key), Kind::boolean, {}};
  f.flag = value;
  fields_.push_back(std::move(f));
}

std::string RunReport::text() const {
  std::string out;
  char buf[64];
  for (const Field& f : fields_) {
    out += f.key;
    out += ": ";
    switch (f.kind) {
      case Kind::text:
        out += f.str;
        break;
      case Kind::number:
        std::snprintf(buf, sizeof buf, "%.17g", f.num);
        out += buf;
        break;
      case Kind::integer:
        out += std::to_string(f.count);
        break;
      case Kind::boolean:
        out += f.flag ? "true" : "false";
        break;
    }
    out += '\n';
  }
  return out;
}

std::string RunReport::json() const {
  nlohmann::ordered_json doc;
  for (const Field& f : fields_) {
    switch (f.kind) {
      case Kind::text:
        doc[f.key] = f.str;
        break;
      case Kind::number:
        doc[f.key] = f.num;
        break;
      case Kind::integer:
        doc[f.key] = f.count;
        break;
      case Kind::boolean:
        doc[f.key] = f.flag;
        break;
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace frechet::cli
