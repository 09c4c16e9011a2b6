#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "commspread/graph.hpp"
#include "commspread/partition.hpp"

namespace commspread::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("commspread-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }
  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline void write_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

inline void write_partition(const std::string& path, const Graph& g, const Partition& p) {
  std::ofstream out(path, std::ios::binary);
  for (NodeId v = 0; v < g.node_count(); ++v) out << g.label(v) << ' ' << p.community(v) << '\n';
}

}  // namespace commspread::testing
