#include "otm/core.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace otm {

using json = nlohmann::ordered_json;

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> out;
    if (inst.m < 1) out.push_back("machine count must be >= 1, got " + std::to_string(inst.m));
    std::set<int> seen;
    for (const Job& j : inst.jobs) {
        const std::string tag = "job " + std::to_string(j.id);
        if (!(j.proc > 0)) out.push_back(tag + ": non-positive processing time");
        if (j.release < 0) out.push_back(tag + ": negative release time");
        if (!seen.insert(j.id).second) out.push_back(tag + ": duplicate id");
    }
    return out;
}

Instance scale_instance(const Instance& inst, double c) {
    if (!(c > 0)) throw std::invalid_argument("scale factor must be > 0");
    Instance out = inst;
    for (Job& j : out.jobs) {
        j.release *= c;
        j.proc *= c;
    }
    return out;
}

double makespan(const ScheduleTrace& trace) {
    if (trace.starts.size() != trace.instance.jobs.size())
        throw std::invalid_argument("incomplete trace: start count != job count");
    std::set<int> job_ids, start_ids;
    for (const Job& j : trace.instance.jobs) job_ids.insert(j.id);
    for (const StartRecord& s : trace.starts) start_ids.insert(s.job_id);
    if (job_ids != start_ids)
        throw std::invalid_argument("incomplete trace: started jobs differ from instance jobs");
    double best = 0;
    for (const StartRecord& s : trace.starts) best = std::max(best, s.completion);
    return best;
}

const Job* find_job(const Instance& inst, int id) {
    for (const Job& j : inst.jobs)
        if (j.id == id) return &j;
    return nullptr;
}

const StartRecord* find_start(const ScheduleTrace& trace, int id) {
    for (const StartRecord& s : trace.starts)
        if (s.job_id == id) return &s;
    return nullptr;
}

static json instance_json(const Instance& inst) {
    json jobs = json::array();
    for (const Job& j : inst.jobs)
        jobs.push_back({{"id", j.id}, {"r", j.release}, {"p", j.proc}});
    return json{{"m", inst.m}, {"jobs", std::move(jobs)}};
}

static Instance instance_from(const json& doc) {
    Instance inst;
    inst.m = doc.at("m").get<int>();
    for (const json& item : doc.at("jobs")) {
        Job j;
        j.id = item.at("id").get<int>();
        j.release = item.at("r").get<double>();
        j.proc = item.at("p").get<double>();
        inst.jobs.push_back(j);
    }
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    return instance_json(inst).dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    try {
        return instance_from(json::parse(text));
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("instance parse error: ") + e.what());
    }
}

static const char* reason_name(StartReason::Tag t) {
    switch (t) {
        case StartReason::Immediate: return "Immediate";
        case StartReason::Pushed: return "Pushed";
        case StartReason::Locked: return "Locked";
    }
    return "Immediate";
}

std::string trace_to_json(const ScheduleTrace& trace) {
    json starts = json::array();
    for (const StartRecord& s : trace.starts) {
        json reason{{"tag", reason_name(s.reason.tag)}};
        if (s.reason.tag == StartReason::Immediate)
            reason["by"] = nullptr;
        else
            reason["by"] = s.reason.by;
        starts.push_back({{"id", s.job_id},
                          {"machine", s.machine},
                          {"s", s.start},
                          {"C", s.completion},
                          {"alpha_j", s.alpha_j},
                          {"reason", std::move(reason)}});
    }
    json locks = json::array();
    for (const auto& per_machine : trace.locks) {
        json list = json::array();
        for (const LockInterval& L : per_machine) list.push_back({L.from, L.until});
        locks.push_back(std::move(list));
    }
    json doc{{"policy", {{"alpha", trace.policy.alpha}, {"lambda", trace.policy.lambda}}},
             {"makespan", trace.makespan},
             {"starts", std::move(starts)},
             {"locks", std::move(locks)},
             {"instance", instance_json(trace.instance)}};
    return doc.dump(2) + "\n";
}

ScheduleTrace trace_from_json(const std::string& text) {
    try {
        json doc = json::parse(text);
        ScheduleTrace tr;
        tr.policy.alpha = doc.at("policy").at("alpha").get<double>();
        tr.policy.lambda = doc.at("policy").at("lambda").get<double>();
        tr.makespan = doc.at("makespan").get<double>();
        for (const json& item : doc.at("starts")) {
            StartRecord s;
            s.job_id = item.at("id").get<int>();
            s.machine = item.at("machine").get<int>();
            s.start = item.at("s").get<double>();
            s.completion = item.at("C").get<double>();
            s.alpha_j = item.at("alpha_j").get<double>();
            std::string tag = item.at("reason").at("tag").get<std::string>();
            if (tag == "Pushed")
                s.reason.tag = StartReason::Pushed;
            else if (tag == "Locked")
                s.reason.tag = StartReason::Locked;
            else if (tag == "Immediate")
                s.reason.tag = StartReason::Immediate;
            else
                throw std::runtime_error("unknown start reason tag: " + tag);
            const json& by = item.at("reason").at("by");
            s.reason.by = by.is_null() ? -1 : by.get<int>();
            tr.starts.push_back(s);
        }
        for (const json& per_machine : doc.at("locks")) {
            std::vector<LockInterval> list;
            for (const json& pair : per_machine)
                list.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
            tr.locks.push_back(std::move(list));
        }
        if (doc.contains("instance")) tr.instance = instance_from(doc.at("instance"));
        return tr;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("trace parse error: ") + e.what());
    }
}

}  // namespace otm
