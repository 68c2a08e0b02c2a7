#include "ril/expert/demoset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ril/common/error.hpp"
#include "ril/common/format.hpp"
#include "ril/expert/planner.hpp"

namespace ril {

std::size_t DemoSet::step_count() const {
  std::size_t n = 0;
  for (const auto& d : demos) n += d.commands.size();
  return n;
}

DemoSet generate_demoset(std::span<const std::shared_ptr<const OccupancyGrid>> maps, int count_per_map,
                         std::uint64_t seed, const ExpertConfig& expert, const SimConfig& sim) {
  if (count_per_map < 1) throw ConfigError("demonstration count must be >= 1");
  DemoSet set;
  set.seed = seed;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    const auto& grid = maps[m];
    const EpisodeSampler sampler(grid, expert.sampling);
    const int budget = expert.retry_factor * count_per_map;
    int produced = 0;
    int crashes = 0;
    int capped = 0;
    int unreachable = 0;
    for (int attempt = 0; attempt < budget && produced < count_per_map; ++attempt) {
      Rng rng = make_rng(seed, {m, static_cast<std::uint64_t>(attempt)});
      const PosePair pair = sampler.sample(rng);
      std::vector<Point2> path;
      try {
        path = plan_path(*grid, pair.start, pair.goal, expert.sampling.clearance);
      } catch (const GeometryError&) {
        ++unreachable;
        continue;
      }
      Demonstration demo = track_path(*grid, path, pair.start, pair.goal, expert.gains, sim, expert.step_cap);
      if (demo.outcome == DemoOutcome::Crash) {
        ++crashes;
        continue;
      }
      if (demo.outcome == DemoOutcome::StepCap) {
        ++capped;
        continue;
      }
      set.demos.push_back(std::move(demo));
      ++produced;
    }
    if (produced < count_per_map) {
      throw GeometryError("map '" + grid->name() + "': only " + std::to_string(produced) + " of " +
                          std::to_string(count_per_map) + " demonstrations after " + std::to_string(budget) +
                          " attempts (crashes " + std::to_string(crashes) + ", step cap " + std::to_string(capped) +
                          ", unreachable " + std::to_string(unreachable) + ")");
    }
    set.per_map_counts[grid->name()] += produced;
  }
  return set;
}

void write_demoset(std::ostream& out, const DemoSet& set) {
  std::size_t i = 0;
  while (i < set.demos.size()) {
    const std::string& map = set.demos[i].map;
    std::size_t j = i;
    while (j < set.demos.size() && set.demos[j].map == map) ++j;
    out << "RILDEMO1 " << (map.empty() ? std::string("unnamed") : map) << ' ' << (j - i) << ' ' << set.seed << '\n';
    for (std::size_t d = i; d < j; ++d) {
      const auto& demo = set.demos[d];
      for (std::size_t t = 0; t < demo.commands.size(); ++t) {
        out << (d - i) << ',' << t;
        for (double v : demo.observations[t].values) out << ',' << format_double(v);
        out << ',' << format_double(demo.commands[t].v) << ',' << format_double(demo.commands[t].omega) << '\n';
      }
    }
    i = j;
  }
}

void save_demoset(const DemoSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write demo file '" + path.string() + "'");
  write_demoset(out, set);
  if (!out) throw IoError("failed writing demo file '" + path.string() + "'");
}

namespace {

double parse_number(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

DemoSet read_demoset(std::istream& in) {
  DemoSet set;
  std::string line;
  std::size_t line_no = 0;
  std::string map;
  long declared = -1;
  long current_id = -1;
  long expected_t = 0;
  std::size_t section_begin = 0;

  const auto close_section = [&]() {
    if (declared < 0) return;
    const long found = static_cast<long>(set.demos.size() - section_begin);
    if (found != declared) {
      throw ParseError("map '" + map + "': header declares " + std::to_string(declared) + " demos, found " +
                       std::to_string(found));
    }
    set.per_map_counts[map] += static_cast<int>(found);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("RILDEMO1", 0) == 0) {
      close_section();
      std::istringstream header(line);
      std::string tag;
      std::uint64_t seed = 0;
      if (!(header >> tag >> map >> declared >> seed) || tag != "RILDEMO1" || declared < 0) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed RILDEMO1 header");
      }
      set.seed = seed;
      current_id = -1;
      section_begin = set.demos.size();
      continue;
    }
    if (declared < 0) throw ParseError("line " + std::to_string(line_no) + ": expected RILDEMO1 header");

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    constexpr std::size_t kFields = 2 + kObservationSize + 2;
    if (fields.size() != kFields) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(kFields) + " fields, got " +
                       std::to_string(fields.size()));
    }
    const long id = static_cast<long>(parse_number(fields[0], line_no));
    const long t = static_cast<long>(parse_number(fields[1], line_no));
    if (id != current_id) {
      if (id != current_id + 1 || t != 0) {
        throw ParseError("line " + std::to_string(line_no) + ": demonstrations must be contiguous and start at t=0");
      }
      current_id = id;
      expected_t = 0;
      Demonstration demo;
      demo.map = map;
      demo.outcome = DemoOutcome::Success;
      set.demos.push_back(std::move(demo));
    }
    if (t != expected_t) throw ParseError("line " + std::to_string(line_no) + ": non-consecutive step index");
    ++expected_t;
    Observation obs;
    for (int k = 0; k < kObservationSize; ++k) obs.values[k] = parse_number(fields[2 + k], line_no);
    auto& demo = set.demos.back();
    demo.observations.push_back(obs);
    demo.commands.push_back({parse_number(fields[2 + kObservationSize], line_no),
                             parse_number(fields[3 + kObservationSize], line_no)});
  }
  close_section();
  return set;
}

DemoSet load_demoset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open demo file '" + path.string() + "'");
  try {
    return read_demoset(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace ril
