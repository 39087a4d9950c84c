#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace frechet::cli {

/* Ordered key/value record of one subcommand run: inputs, parameters,
   verdict or value, guarantee, counters. Renders as "key: value" lines or
   as a JSON object with the same keys. */
class RunReport {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, const char* value);
  void add(std::string key, double value);
  void add(std::string key, std::size_t value);
  void add(std::string key, bool value);

  std::string text() const;
  std::string json() const;

 private:
  enum class Kind { text, number, integer, boolean };
  struct Field {
    std::string key;
    Kind kind;
    std::string str;
    double num = 0.0;
    std::size_t count = 0;
    bool flag = false;
  };
  std::vector<Field> fields_;
};

}  // namespace frechet::cli
