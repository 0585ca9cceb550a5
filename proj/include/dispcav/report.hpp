#pragma once
#include <filesystem>
#include <string>

#include "json.hpp"

#include "dispcav/config.hpp"

namespace dispcav::report {

// Shortest round-trippable decimal form; identical configs must produce
// byte-identical files, so all numeric output funnels through here.
std::string fmt(double v);
std::string fmt(int v);

// "# dispcav <version>" plus one "# key = value" line per resolved config
// entry; prepended to every CSV artifact for reproducibility.
std::string config_comment_block(const cfg::RunConfig& c);

nlohmann::json config_json(const cfg::RunConfig& c);
nlohmann::json meta_json(const cfg::RunConfig& c);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dispcav::report
