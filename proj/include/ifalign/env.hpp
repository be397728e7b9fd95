#ifndef IFALIGN_ENV_HPP
#define IFALIGN_ENV_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ifalign/graph.hpp"
#include "ifalign/label.hpp"
#include "ifalign/pathseq.hpp"

namespace ifalign {

struct Successor {
    LabelSet action;
    StateId next;
};

/// Environment model contract. Successor order is deterministic per state;
/// every grounding graph's root vertex carries the action's labels.
class EnvironmentModel {
public:
    virtual ~EnvironmentModel() = default;

    virtual std::string kind() const = 0;
    virtual StateId initial_state() const = 0;
    virtual std::vector<Successor> successors(const StateId& state) const = 0;
    virtual GroundingGraph grounding_graph(const StateId& pre, const LabelSet& action,
                                           const StateId& post) const = 0;
    /// nullopt when the environment has no intrinsic goal test.
    virtual std::optional<bool> is_goal(const StateId& state) const = 0;
};

// ---------------------------------------------------------------------------
// Concrete desk-scale instances

struct MazeCell {
    bool open = false;
    std::string floor;   // carpet symbol
    std::string wall;    // wallpaper symbol
    std::string object;  // empty = none
};

/// Grid maze. Pose = (x, y, orientation), orientation in {N, E, S, W};
/// x grows East, y grows North. State id "x,y,O".
struct MazeInstance {
    int width = 0;
    int height = 0;
    std::vector<MazeCell> cells;  // row-major, index y * width + x
    StateId start;                // pose id
    StateId goal;                 // pose id (bookkeeping for evaluation)

    const MazeCell& cell(int x, int y) const { return cells[static_cast<std::size_t>(y) * width + x]; }
    bool open(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height && cell(x, y).open;
    }
};

/// Crossblock-style puzzle: each move removes exactly k contiguous present
/// blocks in a row or column; win = empty board. State id = row-major
/// presence bitmask as hex.
struct CrossblockInstance {
    int rows = 0;
    int cols = 0;
    std::vector<bool> blocks;  // row-major initial presence
    int segment = 1;           // k
};

struct Landmark {
    std::string name;  // names may repeat
    double x = 0.0;
    double y = 0.0;
};

/// Landmark map: moves go landmark-to-landmark within the visibility radius.
/// State id = landmark index.
struct MapInstance {
    std::vector<Landmark> landmarks;
    int start = 0;
    double radius = 0.0;
};

std::unique_ptr<EnvironmentModel> make_maze_env(MazeInstance inst);
std::unique_ptr<EnvironmentModel> make_crossblock_env(CrossblockInstance inst);
std::unique_ptr<EnvironmentModel> make_map_env(MapInstance inst);

std::string instance_to_json(const MazeInstance& inst);
std::string instance_to_json(const CrossblockInstance& inst);
std::string instance_to_json(const MapInstance& inst);

/// Construct from an env kind plus its JSON instance (the cli schemas).
std::unique_ptr<EnvironmentModel> make_env(const std::string& kind, const std::string& instanceJson);

/// Rebuild the Path for an action sequence by replaying it through the
/// environment from `start` (ingestion + validation). Throws DataError when a
/// step does not match any legal successor.
Path replay_actions(const EnvironmentModel& env, const StateId& start,
                    const std::vector<LabelSet>& actions);

}  // namespace ifalign

#endif
