#pragma once
#include <string>
#include <vector>

namespace otm {

// Absolute coincidence tolerance: two event times closer than TAU are treated
// as simultaneous everywhere in the lab. Instance features are expected to be
// at least 1e-6 apart unless intentionally coincident.
inline constexpr double TAU = 1e-9;

struct Job {
    int id = 0;
    double release = 0;  // r_j, >= 0
    double proc = 0;     // p_j, > 0
};

struct Instance {
    int m = 1;  // identical machines
    std::vector<Job> jobs;
};

// Why a job did not start earlier: it started right at release (Immediate),
// it waited for a machine to finish (Pushed, carrying the finishing job), or
// it waited for a lock to expire (Locked, carrying the job that set the lock).
// A release coinciding with an unlock counts as Locked.
struct StartReason {
    enum Tag { Immediate, Pushed, Locked };
    Tag tag = Immediate;
    int by = -1;  // blocking / locking job id; -1 for Immediate
};

struct StartRecord {
    int job_id = 0;
    int machine = 0;
    double start = 0;       // s_j
    double completion = 0;  // C_j = s_j + p_j, stored explicitly
    double alpha_j = 0;     // locking parameter charged at this start
    StartReason reason;
};

// One member of the policy family: lambda = 1 is static locking, alpha = 0
// disables locking entirely (plain LPT).
struct PolicyParams {
    double alpha = 0;   // base locking parameter, in [0, 1)
    double lambda = 1;  // rescaling factor, >= 1
};

struct LockInterval {
    double from = 0;
    double until = 0;  // half-open [from, until)
};

struct ScheduleTrace {
    Instance instance;
    PolicyParams policy;
    std::vector<StartRecord> starts;               // one per job
    std::vector<std::vector<LockInterval>> locks;  // merged lock timeline per machine
    double makespan = 0;
};

// Reports every invariant violation as a message; empty result means valid.
std::vector<std::string> validate_instance(const Instance& inst);

// Multiplies every release and processing time by c > 0. Ids and m unchanged.
Instance scale_instance(const Instance& inst, double c);

// max_j C_j. Requires a complete trace (exactly one start per job).
double makespan(const ScheduleTrace& trace);

const Job* find_job(const Instance& inst, int id);
const StartRecord* find_start(const ScheduleTrace& trace, int id);

// Structured text formats. Instances: {"m": int, "jobs": [{"id","r","p"}]}.
// Traces: {"policy": {"alpha","lambda"}, "makespan", "starts": [...],
// "locks": [...]} plus an embedded "instance" so trace files stand alone.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);  // throws std::runtime_error
std::string trace_to_json(const ScheduleTrace& trace);
ScheduleTrace trace_from_json(const std::string& text);  // throws std::runtime_error

}  // namespace otm
