#pragma once
// Reconfiguration transition graph execution. Each node activation loads a
// fresh datapath+controller pair: registers and FSM state start from reset,
// private memories from their declared contents, while shared memories carry
// the image left by the previous activation. The exit code of a finished
// activation selects the outgoing edge (first enabled wins, document order).

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsim/diag.hpp"
#include "rsim/elaborate.hpp"
#include "rsim/frontend.hpp"
#include "rsim/sim.hpp"

namespace rsim {

inline constexpr uint64_t kDefaultReconfigLimit = 10000;

enum class RtgStatus { Completed, PropagatedFault, ReconfigLimit };

inline const char* rtgStatusName(RtgStatus s) {
    switch (s) {
    case RtgStatus::Completed: return "completed";
    case RtgStatus::PropagatedFault: return "propagated-fault";
    case RtgStatus::ReconfigLimit: return "reconfig-limit";
    }
    return "?";
}

struct RtgStep {
    std::string config;
    SimResult result;
};

struct RtgResult {
    RtgStatus status = RtgStatus::Completed;
    std::vector<RtgStep> path;  // one entry per activation, in order
    int lastExit = 0;           // exit code of the final activation when Completed
    std::string message;
    std::map<std::string, MemoryImage> finalShared;
};

struct RtgRunOptions {
    uint64_t maxCycles = 1000000;  // per activation
    uint64_t maxReconfigs = kDefaultReconfigLimit;
    std::ostream* trace = nullptr;
};

class RtgEngine {
public:
    // `baseDir` resolves the configuration file references.
    RtgEngine(RtgSpec spec, const std::string& baseDir) : spec_(std::move(spec)) {
        namespace fs = std::filesystem;
        for (const auto& cfg : spec_.configurations) {
            fs::path dpPath(cfg.datapathFile);
            fs::path fsmPath(cfg.fsmFile);
            if (dpPath.is_relative() && !baseDir.empty()) dpPath = fs::path(baseDir) / dpPath;
            if (fsmPath.is_relative() && !baseDir.empty()) fsmPath = fs::path(baseDir) / fsmPath;
            Node node;
            node.id = cfg.id;
            node.memBaseDir = dpPath.parent_path().string();
            try {
                node.model = std::make_shared<Model>(
                    elaborate(loadDatapathFile(dpPath.string()), loadFsmFile(fsmPath.string())));
            } catch (Error& e) {
                e.setFile(dpPath.string());
                throw;
            }
            configIndex_[cfg.id] = static_cast<int>(nodes_.size());
            nodes_.push_back(std::move(node));
        }
        for (size_t i = 0; i < spec_.edges.size(); ++i) {
            nodes_[static_cast<size_t>(configIndex_.at(spec_.edges[i].from))].edges.push_back(
                static_cast<int>(i));
        }
        // shared memories: validate binds against the elaborated models
        for (const auto& sm : spec_.sharedMemories) {
            sharedIndex_[sm.id] = static_cast<int>(shared_.size());
            shared_.push_back(makeImage(sm.width, sm.depth));
            for (const auto& b : sm.binds) {
                Node& node = nodes_[static_cast<size_t>(configIndex_.at(b.config))];
                const Model& model = *node.model;
                int opIdx = -1;
                for (int i : model.memOps) {
                    if (model.ops[static_cast<size_t>(i)].decl.id == b.memory) opIdx = i;
                }
                if (opIdx < 0) {
                    throw Error(Err::DanglingReference,
                                "configuration '" + b.config + "' has no memory '" + b.memory +
                                    "'",
                                b.pos);
                }
                const OperatorDecl& d = model.ops[static_cast<size_t>(opIdx)].decl;
                if (d.width != sm.width || d.depth != sm.depth) {
                    throw Error(Err::SharedMemoryShapeMismatch,
                                "shared memory '" + sm.id + "' is " + std::to_string(sm.width) +
                                    "x" + std::to_string(sm.depth) + " but '" + b.config + "." +
                                    b.memory + "' is " + std::to_string(d.width) + "x" +
                                    std::to_string(d.depth),
                                b.pos);
                }
                node.binds.push_back({sharedIndex_.at(sm.id), b.memory});
            }
        }
    }

    static RtgEngine fromFile(const std::string& path) {
        RtgSpec spec = loadRtgFile(path);
        return RtgEngine(std::move(spec),
                         std::filesystem::path(path).parent_path().string());
    }

    const RtgSpec& spec() const { return spec_; }

    const Model& configModel(const std::string& id) const {
        auto it = configIndex_.find(id);
        if (it == configIndex_.end()) {
            throw Error(Err::UnknownConfiguration, "no configuration '" + id + "'");
        }
        return *nodes_[static_cast<size_t>(it->second)].model;
    }

    void setSharedImage(const std::string& id, const MemoryImage& img) {
        int i = sharedIdx(id);
        if (!shared_[static_cast<size_t>(i)].sameShape(img)) {
            throw Error(Err::SharedMemoryShapeMismatch,
                        "shared memory '" + id + "' is " +
                            std::to_string(shared_[static_cast<size_t>(i)].width) + "x" +
                            std::to_string(shared_[static_cast<size_t>(i)].depth) +
                            ", image is " + std::to_string(img.width) + "x" +
                            std::to_string(img.depth));
        }
        shared_[static_cast<size_t>(i)] = img;
    }

    const MemoryImage& sharedImage(const std::string& id) const {
        return shared_[static_cast<size_t>(sharedIdx(id))];
    }

    RtgResult run(const RtgRunOptions& opt = {}) {
        RtgResult res;
        auto finish = [&]() -> RtgResult& {
            for (const auto& sm : spec_.sharedMemories) {
                res.finalShared.emplace(sm.id, shared_[static_cast<size_t>(sharedIndex_.at(sm.id))]);
            }
            return res;
        };
        int cur = configIndex_.at(spec_.start);
        while (true) {
            if (res.path.size() == opt.maxReconfigs) {
                res.status = RtgStatus::ReconfigLimit;
                res.message =
                    "reconfiguration limit of " + std::to_string(opt.maxReconfigs) + " reached";
                return finish();
            }
            Node& node = nodes_[static_cast<size_t>(cur)];
            if (opt.trace) {
                *opt.trace << "# activation " << res.path.size() << " configuration " << node.id
                           << "\n";
            }
            Simulator sim(*node.model, node.memBaseDir);
            for (const auto& b : node.binds) {
                sim.setMemImage(b.memory, shared_[static_cast<size_t>(b.shared)]);
            }
            RunOptions sopt;
            sopt.maxCycles = opt.maxCycles;
            sopt.trace = opt.trace;
            SimResult r = sim.run(sopt);
            res.path.push_back({node.id, r});
            if (r.status != SimStatus::Finished) {
                res.status = RtgStatus::PropagatedFault;
                res.message = "configuration '" + node.id + "': " +
                              std::string(simStatusName(r.status)) +
                              (r.message.empty() ? "" : ": " + r.message);
                return finish();
            }
            for (const auto& b : node.binds) {
                shared_[static_cast<size_t>(b.shared)] = sim.memImage(b.memory);
            }
            if (node.edges.empty()) {
                res.status = RtgStatus::Completed;
                res.lastExit = r.exitCode;
                return finish();
            }
            const RtgEdge* taken = nullptr;
            for (int ei : node.edges) {
                const RtgEdge& e = spec_.edges[static_cast<size_t>(ei)];
                bool enabled = true;
                if (e.cond) {
                    enabled = evalExpr(*e.cond, [&](const std::string&) {
                                  return static_cast<uint64_t>(r.exitCode);
                              }) != 0;
                }
                if (enabled) {
                    taken = &e;
                    break;
                }
            }
            if (!taken) {
                throw Error(Err::NoEnabledEdge,
                            "configuration '" + node.id + "' finished with exit " +
                                std::to_string(r.exitCode) + " but no edge is enabled");
            }
            cur = configIndex_.at(taken->to);
        }
    }

private:
    struct Bind {
        int shared;          // index into shared_
        std::string memory;  // mem operator id in the configuration
    };
    struct Node {
        std::string id;
        std::string memBaseDir;
        std::shared_ptr<Model> model;
        std::vector<int> edges;  // indices into spec_.edges, document order
        std::vector<Bind> binds;
    };

    int sharedIdx(const std::string& id) const {
        auto it = sharedIndex_.find(id);
        if (it == sharedIndex_.end()) {
            throw Error(Err::DanglingReference, "no shared memory '" + id + "'");
        }
        return it->second;
    }

    RtgSpec spec_;
    std::vector<Node> nodes_;
    std::unordered_map<std::string, int> configIndex_;
    std::vector<MemoryImage> shared_;
    std::unordered_map<std::string, int> sharedIndex_;
};

}  // namespace rsim
