#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "k2u/taskmodel.hpp"

namespace k2u {

using nlohmann::json;

namespace {

double number_field(const json &obj, const char *key, std::size_t index)
{
    const auto &v = obj.at(key);
    if (!v.is_number())
        throw ModelError(index, key, "must be a number");
    return v.get<double>();
}

void reject_unknown(const json &obj, const std::set<std::string> &known,
                    std::optional<std::size_t> index)
{
    for (const auto &[key, _] : obj.items())
        if (!known.count(key))
            throw ModelError(index, key, "unknown field");
}

Task parse_task(const json &obj, std::size_t index)
{
    if (!obj.is_object())
        throw ModelError(index, "", "task entry must be an object");
    reject_unknown(obj, {"c", "t", "d", "s", "cp", "frames"}, index);
    for (const char *required : {"c", "t"})
        if (!obj.contains(required))
            throw ModelError(index, required, "missing required field");

    Task task;
    task.wcet = number_field(obj, "c", index);
    task.period = number_field(obj, "t", index);
    task.deadline = obj.contains("d") ? number_field(obj, "d", index) : task.period;
    if (obj.contains("s"))
        task.suspension = number_field(obj, "s", index);
    if (obj.contains("cp"))
        task.critical_path = number_field(obj, "cp", index);
    if (obj.contains("frames")) {
        const auto &frames = obj.at("frames");
        if (!frames.is_array() || frames.empty())
            throw ModelError(index, "frames", "must be a nonempty array of numbers");
        for (const auto &f : frames) {
            if (!f.is_number())
                throw ModelError(index, "frames", "must be a nonempty array of numbers");
            task.frames.push_back(f.get<double>());
        }
    }
    validate_task(task, index);
    return task;
}

} // namespace

TaskSet parse_taskset(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error &e) {
        throw ModelError(std::nullopt, "", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ModelError(std::nullopt, "", "document must be a JSON object");
    reject_unknown(doc, {"processors", "tasks"}, std::nullopt);

    if (!doc.contains("processors"))
        throw ModelError(std::nullopt, "processors", "missing required field");
    const auto &m = doc.at("processors");
    if (!m.is_number_integer() || m.get<long long>() < 1)
        throw ModelError(std::nullopt, "processors", "must be an integer >= 1");

    if (!doc.contains("tasks"))
        throw ModelError(std::nullopt, "tasks", "missing required field");
    const auto &arr = doc.at("tasks");
    if (!arr.is_array())
        throw ModelError(std::nullopt, "tasks", "must be an array");

    std::vector<Task> tasks;
    tasks.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        tasks.push_back(parse_task(arr[i], i));
    return TaskSet(std::move(tasks), static_cast<int>(m.get<long long>()));
}

std::string serialize_taskset(const TaskSet &set)
{
    json doc;
    doc["processors"] = set.processors();
    json tasks = json::array();
    for (const auto &t : set.tasks()) {
        json obj{{"c", t.wcet}, {"t", t.period}, {"d", t.deadline}};
        if (t.suspension > 0.0)
            obj["s"] = t.suspension;
        if (t.critical_path)
            obj["cp"] = *t.critical_path;
        if (t.has_frames())
            obj["frames"] = t.frames;
        tasks.push_back(std::move(obj));
    }
    doc["tasks"] = std::move(tasks);
    return doc.dump(2);
}

TaskSet load_taskset(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ModelError(std::nullopt, "", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_taskset(buf.str());
}

} // namespace k2u
