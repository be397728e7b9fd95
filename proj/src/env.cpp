#include "ifalign/env.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ifalign/errors.hpp"

#include "json.hpp"

namespace ifalign {

namespace {

using Json = nlohmann::ordered_json;

/// Every vertex can absorb stacked modifiers ("the red sofa" puts two words on
/// one percept), so each carries a self edge.
void add_self_loops(GroundingGraph& g) {
    LabelSet self;
    self.insert_symbol("rel", "self");
    const int n = static_cast<int>(g.size());
    for (int v = 0; v < n; ++v) g.add_edge(v, v, self);
}

// ---------------------------------------------------------------------------
// maze

constexpr int kMazeMaxStep = 3;

struct Pose {
    int x = 0;
    int y = 0;
    char o = 'N';
};

const char kOrients[4] = {'N', 'E', 'S', 'W'};

int orient_index(char o) {
    for (int i = 0; i < 4; ++i)
        if (kOrients[i] == o) return i;
    return -1;
}

void orient_delta(char o, int& dx, int& dy) {
    switch (o) {
        case 'N': dx = 0; dy = 1; return;
        case 'E': dx = 1; dy = 0; return;
        case 'S': dx = 0; dy = -1; return;
        default: dx = -1; dy = 0; return;
    }
}

Pose parse_pose(const StateId& s) {
    Pose p;
    char o = 0;
    if (std::sscanf(s.c_str(), "%d,%d,%c", &p.x, &p.y, &o) != 3 || orient_index(o) < 0)
        throw Error(Err::DataError, "bad maze pose '" + s + "'");
    p.o = o;
    return p;
}

StateId format_pose(const Pose& p) {
    return std::to_string(p.x) + "," + std::to_string(p.y) + "," + p.o;
}

class MazeEnv final : public EnvironmentModel {
public:
    explicit MazeEnv(MazeInstance inst) : inst_(std::move(inst)) {}

    std::string kind() const override { return "maze"; }
    StateId initial_state() const override { return inst_.start; }

    std::vector<Successor> successors(const StateId& state) const override {
        Pose p = parse_pose(state);
        std::vector<Successor> out;
        for (const char* dir : {"left", "right"}) {
            LabelSet a;
            a.insert_symbol("type", "rotate");
            a.insert_symbol("dir", dir);
            Pose q = p;
            int turn = dir[0] == 'l' ? 3 : 1;
            q.o = kOrients[(orient_index(p.o) + turn) % 4];
            out.push_back({std::move(a), format_pose(q)});
        }
        int dx, dy;
        orient_delta(p.o, dx, dy);
        for (int d = 1; d <= kMazeMaxStep; ++d) {
            if (!inst_.open(p.x + d * dx, p.y + d * dy)) break;
            LabelSet a;
            a.insert_symbol("type", "move");
            a.insert_symbol("mag", std::to_string(d));
            a.insert_real("magnitude", d);
            Pose q{p.x + d * dx, p.y + d * dy, p.o};
            out.push_back({std::move(a), format_pose(q)});
        }
        return out;
    }

    GroundingGraph grounding_graph(const StateId& pre, const LabelSet& action,
                                   const StateId& post) const override {
        (void)post;
        GroundingGraph g;
        g.root = g.add_vertex(action);
        if (action.symbol("type") == "move") {
            // percepts: the open cells ahead of the pre pose, with a dedicated
            // destination edge marking where this particular move ends
            Pose p = parse_pose(pre);
            int dx, dy;
            orient_delta(p.o, dx, dy);
            int mag = std::atoi(action.symbol("mag").c_str());
            for (int k = 1; k <= kMazeMaxStep; ++k) {
                int cx = p.x + k * dx, cy = p.y + k * dy;
                if (!inst_.open(cx, cy)) break;
                const MazeCell& c = inst_.cell(cx, cy);
                LabelSet v;
                v.insert_symbol("dist", std::to_string(k));
                v.insert_symbol("floor", c.floor);
                v.insert_symbol("wall", c.wall);
                if (!c.object.empty()) v.insert_symbol("object", c.object);
                int sat = g.add_vertex(std::move(v));
                LabelSet at;
                at.insert_symbol("rel", "at-dist");
                at.insert_symbol("dist", std::to_string(k));
                g.add_edge(g.root, sat, std::move(at));
                if (k == mag) {
                    LabelSet destRel;
                    destRel.insert_symbol("rel", "destination");
                    g.add_edge(g.root, sat, std::move(destRel));
                }
            }
        }
        add_self_loops(g);
        return g;
    }

    std::optional<bool> is_goal(const StateId&) const override { return std::nullopt; }

private:
    MazeInstance inst_;
};

// ---------------------------------------------------------------------------
// crossblock

std::uint64_t parse_mask(const StateId& s) {
    std::uint64_t m = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else throw Error(Err::DataError, "bad crossblock state '" + s + "'");
        m = (m << 4) | static_cast<std::uint64_t>(d);
    }
    return m;
}

StateId format_mask(std::uint64_t m, int bits) {
    int width = (bits + 3) / 4;
    std::string out(static_cast<std::size_t>(width), '0');
    for (int i = width - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = "0123456789abcdef"[m & 0xf];
        m >>= 4;
    }
    return out;
}

class CrossblockEnv final : public EnvironmentModel {
public:
    explicit CrossblockEnv(CrossblockInstance inst) : inst_(std::move(inst)) {
        if (inst_.rows * inst_.cols > 64)
            throw Error(Err::TooLarge, "crossblock boards are capped at 64 cells");
    }

    std::string kind() const override { return "crossblock"; }

    StateId initial_state() const override {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < inst_.blocks.size(); ++i)
            if (inst_.blocks[i]) m |= 1ULL << i;
        return format_mask(m, inst_.rows * inst_.cols);
    }

    std::vector<Successor> successors(const StateId& state) const override {
        std::uint64_t m = parse_mask(state);
        const int k = inst_.segment;
        std::vector<Successor> out;
        auto present = [&](int x, int y) { return (m >> (y * inst_.cols + x)) & 1; };
        for (int y = 0; y < inst_.rows; ++y)
            for (int x0 = 0; x0 + k <= inst_.cols; ++x0) {
                bool run = true;
                for (int d = 0; d < k && run; ++d) run = present(x0 + d, y);
                if (!run) continue;
                std::uint64_t next = m;
                for (int d = 0; d < k; ++d) next &= ~(1ULL << (y * inst_.cols + x0 + d));
                out.push_back({clear_action("row", y, x0), format_mask(next, inst_.rows * inst_.cols)});
            }
        for (int x = 0; x < inst_.cols; ++x)
            for (int y0 = 0; y0 + k <= inst_.rows; ++y0) {
                bool run = true;
                for (int d = 0; d < k && run; ++d) run = present(x, y0 + d);
                if (!run) continue;
                std::uint64_t next = m;
                for (int d = 0; d < k; ++d) next &= ~(1ULL << ((y0 + d) * inst_.cols + x));
                out.push_back({clear_action("col", x, y0), format_mask(next, inst_.rows * inst_.cols)});
            }
        return out;
    }

    GroundingGraph grounding_graph(const StateId& pre, const LabelSet& action,
                                   const StateId& post) const override {
        (void)pre;
        GroundingGraph g;
        g.root = g.add_vertex(action);
        std::uint64_t after = parse_mask(post);
        int remaining = 0;
        for (; after; after >>= 1) remaining += static_cast<int>(after & 1);
        LabelSet v;
        v.insert_symbol("remaining", std::to_string(remaining));
        int sat = g.add_vertex(std::move(v));
        LabelSet rel;
        rel.insert_symbol("rel", "leaves");
        g.add_edge(g.root, sat, std::move(rel));
        add_self_loops(g);
        return g;
    }

    std::optional<bool> is_goal(const StateId& state) const override { return parse_mask(state) == 0; }

private:
    static LabelSet clear_action(const char* orient, int pos, int at) {
        LabelSet a;
        a.insert_symbol("type", "clear");
        a.insert_symbol("orient", orient);
        a.insert_symbol("pos", std::to_string(pos));
        a.insert_symbol("at", std::to_string(at));
        return a;
    }

    CrossblockInstance inst_;
};

// ---------------------------------------------------------------------------
// map

class MapEnv final : public EnvironmentModel {
public:
    explicit MapEnv(MapInstance inst) : inst_(std::move(inst)) {}

    std::string kind() const override { return "map"; }
    StateId initial_state() const override { return std::to_string(inst_.start); }

    std::vector<Successor> successors(const StateId& state) const override {
        int i = parse_index(state);
        std::vector<Successor> out;
        for (std::size_t j = 0; j < inst_.landmarks.size(); ++j) {
            if (static_cast<int>(j) == i) continue;
            double dx = inst_.landmarks[j].x - inst_.landmarks[static_cast<std::size_t>(i)].x;
            double dy = inst_.landmarks[j].y - inst_.landmarks[static_cast<std::size_t>(i)].y;
            double dist = std::sqrt(dx * dx + dy * dy);
            if (dist > inst_.radius) continue;
            LabelSet a;
            a.insert_symbol("type", "goto");
            a.insert_symbol("dest", std::to_string(j));
            a.insert_symbol("side", side_of(dx, dy));
            a.insert_symbol("dist", dist_bucket(dist));
            out.push_back({std::move(a), std::to_string(j)});
        }
        return out;
    }

    GroundingGraph grounding_graph(const StateId& pre, const LabelSet& action,
                                   const StateId& post) const override {
        (void)pre;
        GroundingGraph g;
        g.root = g.add_vertex(action);
        int j = parse_index(post);
        LabelSet v;
        v.insert_string("name", inst_.landmarks[static_cast<std::size_t>(j)].name);
        int sat = g.add_vertex(std::move(v));
        LabelSet rel;
        rel.insert_symbol("rel", "dest");
        g.add_edge(g.root, sat, std::move(rel));
        add_self_loops(g);
        return g;
    }

    std::optional<bool> is_goal(const StateId&) const override { return std::nullopt; }

private:
    int parse_index(const StateId& s) const {
        char* end = nullptr;
        long i = std::strtol(s.c_str(), &end, 10);
        if (end == s.c_str() || *end != '\0' || i < 0 || i >= static_cast<long>(inst_.landmarks.size()))
            throw Error(Err::DataError, "bad map state '" + s + "'");
        return static_cast<int>(i);
    }

    static std::string side_of(double dx, double dy) {
        if (std::fabs(dy) >= std::fabs(dx)) return dy > 0 ? "North" : "South";
        return dx > 0 ? "East" : "West";
    }

    static std::string dist_bucket(double dist) {
        int b = static_cast<int>(dist);
        return b <= 4 ? std::to_string(b) : "far";
    }

    MapInstance inst_;
};

}  // namespace

std::unique_ptr<EnvironmentModel> make_maze_env(MazeInstance inst) {
    return std::make_unique<MazeEnv>(std::move(inst));
}
std::unique_ptr<EnvironmentModel> make_crossblock_env(CrossblockInstance inst) {
    return std::make_unique<CrossblockEnv>(std::move(inst));
}
std::unique_ptr<EnvironmentModel> make_map_env(MapInstance inst) {
    return std::make_unique<MapEnv>(std::move(inst));
}

std::unique_ptr<EnvironmentModel> make_env(const std::string& kind, const std::string& instanceJson) {
    Json j;
    try {
        j = Json::parse(instanceJson);
    } catch (const Json::exception& e) {
        throw Error(Err::DataError, std::string("bad instance json: ") + e.what());
    }
    try {
        if (kind == "maze") {
            MazeInstance m;
            m.width = j.at("width").get<int>();
            m.height = j.at("height").get<int>();
            m.start = j.at("start").get<std::string>();
            m.goal = j.value("goal", std::string());
            for (const auto& cj : j.at("cells")) {
                MazeCell c;
                c.open = cj.at("open").get<bool>();
                c.floor = cj.value("floor", std::string());
                c.wall = cj.value("wall", std::string());
                c.object = cj.value("object", std::string());
                m.cells.push_back(std::move(c));
            }
            if (static_cast<int>(m.cells.size()) != m.width * m.height)
                throw Error(Err::DataError, "maze cell count disagrees with width*height");
            return make_maze_env(std::move(m));
        }
        if (kind == "crossblock") {
            CrossblockInstance c;
            c.rows = j.at("rows").get<int>();
            c.cols = j.at("cols").get<int>();
            c.segment = j.at("segment").get<int>();
            std::string blocks = j.at("blocks").get<std::string>();
            if (static_cast<int>(blocks.size()) != c.rows * c.cols)
                throw Error(Err::DataError, "crossblock block string disagrees with rows*cols");
            for (char ch : blocks) c.blocks.push_back(ch == '1');
            return make_crossblock_env(std::move(c));
        }
        if (kind == "map") {
            MapInstance m;
            m.start = j.at("start").get<int>();
            m.radius = j.at("radius").get<double>();
            for (const auto& lj : j.at("landmarks")) {
                Landmark l;
                l.name = lj.at("name").get<std::string>();
                l.x = lj.at("x").get<double>();
                l.y = lj.at("y").get<double>();
                m.landmarks.push_back(std::move(l));
            }
            return make_map_env(std::move(m));
        }
    } catch (const Json::exception& e) {
        throw Error(Err::DataError, std::string("bad ") + kind + " instance: " + e.what());
    }
    throw Error(Err::DataError, "unknown environment kind '" + kind + "'");
}

std::string instance_to_json(const MazeInstance& inst) {
    Json j;
    j["width"] = inst.width;
    j["height"] = inst.height;
    j["start"] = inst.start;
    j["goal"] = inst.goal;
    j["cells"] = Json::array();
    for (const auto& c : inst.cells) {
        Json cj;
        cj["open"] = c.open;
        if (!c.floor.empty()) cj["floor"] = c.floor;
        if (!c.wall.empty()) cj["wall"] = c.wall;
        if (!c.object.empty()) cj["object"] = c.object;
        j["cells"].push_back(std::move(cj));
    }
    return j.dump();
}

std::string instance_to_json(const CrossblockInstance& inst) {
    Json j;
    j["rows"] = inst.rows;
    j["cols"] = inst.cols;
    j["segment"] = inst.segment;
    std::string blocks;
    for (bool b : inst.blocks) blocks += b ? '1' : '0';
    j["blocks"] = blocks;
    return j.dump();
}

std::string instance_to_json(const MapInstance& inst) {
    Json j;
    j["start"] = inst.start;
    j["radius"] = inst.radius;
    j["landmarks"] = Json::array();
    for (const auto& l : inst.landmarks) {
        Json lj;
        lj["name"] = l.name;
        lj["x"] = l.x;
        lj["y"] = l.y;
        j["landmarks"].push_back(std::move(lj));
    }
    return j.dump();
}

Path replay_actions(const EnvironmentModel& env, const StateId& start,
                    const std::vector<LabelSet>& actions) {
    Path path;
    StateId state = start;
    for (std::size_t t = 0; t < actions.size(); ++t) {
        bool found = false;
        for (const auto& succ : env.successors(state)) {
            if (succ.action == actions[t]) {
                ActionStep step;
                step.preState = state;
                step.action = succ.action;
                step.postState = succ.next;
                step.graph = env.grounding_graph(state, succ.action, succ.next);
                state = succ.next;
                path.steps.push_back(std::move(step));
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(Err::DataError, "action " + std::to_string(t) + " (" + actions[t].canonical() +
                                            ") is not a legal successor of state '" + state + "'");
    }
    return path;
}

}  // namespace ifalign
