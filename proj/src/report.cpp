#include "dispcav/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dispcav/version.hpp"

namespace dispcav::report {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(int v) { return std::to_string(v); }

std::string config_comment_block(const cfg::RunConfig& c) {
  std::ostringstream out;
  out << "# dispcav " << kVersion << "\n";
  std::stringstream cfg_lines(cfg::emit_config(c));
  std::string line;
  // the artifact's own location carries no information and would tie the
  // bytes to wherever the run happened to write
  while (std::getline(cfg_lines, line))
    if (line.rfind("output.directory", 0) != 0) out << "# " << line << "\n";
  return out.str();
}

nlohmann::json config_json(const cfg::RunConfig& c) {
  nlohmann::json j;
  std::stringstream cfg_lines(cfg::emit_config(c));
  std::string line;
  while (std::getline(cfg_lines, line)) {
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    if (key == "output.directory") continue;
    j[key] = value;
  }
  return j;
}

nlohmann::json meta_json(const cfg::RunConfig& c) {
  nlohmann::json j;
  j["artifact"] = "dispcav";
  j["version"] = kVersion;
  j["config"] = config_json(c);
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace dispcav::report
