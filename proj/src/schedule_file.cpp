#include <set>

#include "json_util.hpp"
#include "tubepack/dataset_io.hpp"
#include "tubepack/errors.hpp"

namespace tubepack {

using detail::Json;

std::string dump_schedule(const ScheduleRecord& record) {
  if (record.state.placements.empty()) throw InvalidArgument("schedule has no placements");
  Json doc;
  doc["version"] = record.version;
  doc["seed"] = record.seed;
  doc["solver"] = record.solver;
  doc["rng"] = record.rng;
  const SynopsisConstraints& c = record.constraints;
  doc["constraints"] = {{"t_max", c.t_max()},   {"n_max", c.n_max()},
                        {"a_thresh", c.a_thresh()}, {"preserve_order", c.preserve_order()},
                        {"w0", c.w0()},         {"w1", c.w1()}};
  Json placements = Json::object();
  for (const auto& [id, start] : record.state.placements) placements[id] = start;
  doc["placements"] = std::move(placements);
  doc["cost"] = {{"ec", record.cost.ec},
                 {"et", record.cost.et},
                 {"total", record.cost.total},
                 {"t_last", record.cost.t_last}};
  return doc.dump(2) + "\n";
}

void save_schedule(const ScheduleRecord& record, const std::filesystem::path& path) {
  detail::write_text(path, dump_schedule(record));
}

ScheduleRecord parse_schedule(const std::string& text) {
  const Json doc = detail::parse_json(text);
  ScheduleRecord record;
  const auto string_member = [&](const char* key) {
    const Json& v = detail::member(doc, key, "schedule");
    if (!v.is_string()) throw ParseError(std::string("schedule: '") + key + "' must be a string");
    return v.get<std::string>();
  };
  record.version = string_member("version");
  record.solver = string_member("solver");
  record.rng = string_member("rng");
  const Json& seed = detail::member(doc, "seed", "schedule");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw ParseError("schedule: 'seed' must be a non-negative integer");
  }
  record.seed = seed.get<std::uint64_t>();

  const Json& c = detail::member(doc, "constraints", "schedule");
  const Json& order = detail::member(c, "preserve_order", "constraints");
  if (!order.is_boolean()) throw ParseError("constraints: 'preserve_order' must be a boolean");
  try {
    record.constraints = SynopsisConstraints(
        detail::int_member(c, "t_max", "constraints"), detail::int_member(c, "n_max", "constraints"),
        detail::number_member(c, "a_thresh", "constraints"), order.get<bool>(),
        detail::number_member(c, "w0", "constraints"),
        detail::number_member(c, "w1", "constraints"));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("constraints: ") + e.what());
  }

  const Json& placements = detail::member(doc, "placements", "schedule");
  if (!placements.is_object()) throw ParseError("schedule: 'placements' must be an object");
  if (placements.empty()) throw ParseError("schedule: 'placements' is empty");
  for (const auto& [id, start] : placements.items()) {
    if (!start.is_number_integer()) {
      throw ParseError("schedule: placement of '" + id + "' must be an integer");
    }
    record.state.placements[id] = start.get<int>();
  }

  const Json& cost = detail::member(doc, "cost", "schedule");
  record.cost.ec = detail::int_member(cost, "ec", "cost");
  record.cost.et = detail::number_member(cost, "et", "cost");
  record.cost.total = detail::number_member(cost, "total", "cost");
  record.cost.t_last = detail::int_member(cost, "t_last", "cost");
  return record;
}

ScheduleRecord load_schedule(const std::filesystem::path& path) {
  return parse_schedule(detail::read_text(path));
}

ScheduleRecord load_schedule(const std::filesystem::path& path, std::span<const Tube> tubes) {
  ScheduleRecord record = load_schedule(path);
  std::set<TubeId> known;
  for (const Tube& tube : tubes) known.insert(tube.id);
  for (const auto& [id, start] : record.state.placements) {
    if (!known.contains(id)) throw ParseError("schedule places unknown tube '" + id + "'");
  }
  return record;
}

}  // namespace tubepack
