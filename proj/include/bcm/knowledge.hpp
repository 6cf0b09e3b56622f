#pragma once
#include <optional>

#include "bcm/timing.hpp"
#include "bcm/zigzag.hpp"

namespace bcm {

struct Verdict {
    bool holds = false;
    // Largest x for which sigma knows from >=x to; empty when no x works.
    std::optional<Weight> max_weight;
    GeneralNode from, to;  // normalized endpoints
    std::optional<Zigzag> certificate;
    // Fast run realizing max_weight, or refuting x when max_weight is empty.
    std::optional<FastRun> witness;
};

Verdict knows_precedence(const Run& run, NodeRef sigma, const GeneralNode& theta1, const GeneralNode& theta2,
                         Weight x);

// Same bound as knows_precedence, computed from constraint-path weights in
// the extended graph without building a run.
std::optional<Weight> visible_bound(const Run& run, NodeRef sigma, const GeneralNode& theta1,
                                    const GeneralNode& theta2);

enum class TaskKind { late, early };

// C's go triggers A at <go, [C, A]>. Late: B must act at least x after A.
// Early: B must act at least x before A.
struct Task {
    TaskKind kind = TaskKind::late;
    ProcId a = 0, b = 0, c = 0;
    Weight x = 0;
};

enum class Decision { wait, act };

std::optional<NodeRef> go_node(const Run& run, const Task& task);
GeneralNode a_node(const Task& task, NodeRef go);

Decision protocol_decision(const Run& run, const Task& task, NodeRef sigma);

struct TaskOutcome {
    std::optional<NodeRef> go;
    std::optional<NodeRef> a_act;
    std::optional<NodeRef> b_act;
    bool compliant = true;
    bool complete = true;  // false when A's action lies beyond the horizon
};

TaskOutcome evaluate_task(const Run& run, const Task& task);

} // namespace bcm
