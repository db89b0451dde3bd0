#pragma once

// Small fixtures shared by the unit tests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "leadlag/series.hpp"

namespace testutil {

inline std::vector<leadlag::TradingDate> weekdays(
    std::size_t n, leadlag::TradingDate start = {2010, 1, 4}) {
  std::vector<leadlag::TradingDate> out;
  out.reserve(n);
  leadlag::TradingDate d = start;
  while (!d.is_weekday()) d = d.next_calendar_day();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(d);
    d = d.next_weekday();
  }
  return out;
}

inline leadlag::AlignedPair make_aligned(std::string id, std::vector<double> q,
                                         std::vector<double> t) {
  leadlag::AlignedPair pair;
  pair.entity_id = std::move(id);
  pair.dates = weekdays(q.size());
  pair.q = std::move(q);
  pair.t = std::move(t);
  return pair;
}

// Self deleting scratch directory for IO tests.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "leadlag_test_XXXXXX")
            .string();
    if (::mkdtemp(tmpl.data()) == nullptr)
      throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f),
                     std::istreambuf_iterator<char>());
}

}  // namespace testutil
