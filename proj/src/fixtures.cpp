#include "skylattice/fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace sky::fixtures {

// Everything in this file is transcribed fixture data: the example battle
// log split into novice/expert halves and the result tables expected from
// it. Nothing here is computed by the engine.

std::string pokemon_csv() {
    return "Tier,Player,Opponent,Rank,Rarity,Duration,Loss\n"
           "UU,A,D,N,5,25,30\n"
           "OU,B,E,N,4,65,50\n"
           "OU,B,F,N,4,35,40\n"
           "OU,B,A,N,4,85,40\n"
           "OU,C,A,N,1,95,60\n"
           "OU,C,B,N,1,35,50\n"
           "OU,D,B,N,9,85,60\n"
           "OU,D,C,N,9,85,70\n"
           "UU,E,D,N,7,25,50\n"
           "UU,E,E,N,7,65,30\n"
           "UU,A,D,E,5,20,30\n"
           "OU,B,E,E,4,60,45\n"
           "OU,B,F,E,4,30,30\n"
           "OU,B,A,E,4,80,50\n"
           "OU,C,A,E,1,90,70\n"
           "OU,C,B,E,1,30,30\n"
           "OU,D,B,E,9,80,50\n"
           "OU,D,C,E,9,90,70\n"
           "UU,E,D,E,7,20,30\n"
           "UU,E,E,E,7,60,45\n";
}

std::string pokemon_side1_csv() {
    return "Tier,Player,Opponent,Rarity,Duration,Loss\n"
           "UU,A,D,5,25,30\n"
           "OU,B,E,4,65,50\n"
           "OU,B,F,4,35,40\n"
           "OU,B,A,4,85,40\n"
           "OU,C,A,1,95,60\n"
           "OU,C,B,1,35,50\n"
           "OU,D,B,9,85,60\n"
           "OU,D,C,9,85,70\n"
           "UU,E,D,7,25,50\n"
           "UU,E,E,7,65,30\n";
}

std::string pokemon_side2_csv() {
    return "Tier,Player,Opponent,Rarity,Duration,Loss\n"
           "UU,A,D,5,20,30\n"
           "OU,B,E,4,60,45\n"
           "OU,B,F,4,30,30\n"
           "OU,B,A,4,80,50\n"
           "OU,C,A,1,90,70\n"
           "OU,C,B,1,30,30\n"
           "OU,D,B,9,80,50\n"
           "OU,D,C,9,90,70\n"
           "UU,E,D,7,20,30\n"
           "UU,E,E,7,60,45\n";
}

Schema pokemon_schema() {
    return Schema({"Tier", "Player", "Opponent"},
                  {{"Rarity", Direction::Minimize},
                   {"Duration", Direction::Minimize},
                   {"Loss", Direction::Minimize}},
                  {{"Duration", "Duration_1", "Duration_2"}, {"Loss", "Loss_1", "Loss_2"}},
                  SplitProperty{"Rank", "N", "E"});
}

Schema pokemon_side_schema() { return pokemon_schema().without_split(); }

std::string pokemon_schema_json() { return pokemon_schema().to_json(); }
std::string pokemon_side_schema_json() { return pokemon_side_schema().to_json(); }

namespace {

Relation load_from_string(const std::string& csv, const Schema& schema) {
    std::istringstream in(csv);
    return load_relation(in, schema);
}

}  // namespace

Relation pokemon() { return load_from_string(pokemon_csv(), pokemon_schema()); }
Relation pokemon_side1() { return load_from_string(pokemon_side1_csv(), pokemon_side_schema()); }
Relation pokemon_side2() { return load_from_string(pokemon_side2_csv(), pokemon_side_schema()); }

const std::vector<ExpectedSkycuboid>& expected_skycube(int side) {
    static const std::vector<ExpectedSkycuboid> novice = {
        {"-", {}},          {"R", {5, 6}},        {"D", {1, 9}},
        {"L", {1, 10}},     {"RD", {1, 6}},       {"RL", {1, 3, 4, 6}},
        {"DL", {1}},        {"RDL", {1, 3, 6}},
    };
    static const std::vector<ExpectedSkycuboid> expert = {
        {"-", {}},          {"R", {5, 6}},        {"D", {1, 9}},
        {"L", {1, 3, 6, 9}}, {"RD", {1, 6}},      {"RL", {6}},
        {"DL", {1, 9}},     {"RDL", {1, 6}},
    };
    return side == 1 ? novice : expert;
}

const std::vector<ExpectedConcept>& expected_agree_lattice(int side) {
    static const std::vector<ExpectedConcept> novice = {
        {"-", {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}},
        {"R", {{1}, {2, 3, 4}, {5, 6}, {7, 8}, {9, 10}}},
        {"D", {{1, 9}, {2, 10}, {3, 6}, {4, 7, 8}, {5}}},
        {"L", {{1, 10}, {2, 6, 9}, {3, 4}, {5, 7}, {8}}},
        {"RD", {{1}, {2}, {3}, {4}, {5}, {6}, {7, 8}, {9}, {10}}},
        {"RL", {{1}, {2}, {3, 4}, {5}, {6}, {7}, {8}, {9}, {10}}},
        {"RDL", {{1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}, {10}}},
    };
    static const std::vector<ExpectedConcept> expert = {
        {"-", {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}},
        {"R", {{1}, {2, 3, 4}, {5, 6}, {7, 8}, {9, 10}}},
        {"L", {{1, 3, 6, 9}, {2, 10}, {4, 7}, {5, 8}}},
        {"DL", {{1, 9}, {2, 10}, {3, 6}, {4, 7}, {5, 8}}},
        {"RDL", {{1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}, {10}}},
    };
    return side == 1 ? novice : expert;
}

const std::vector<ExpectedConcept>& expected_skyline_lattice(int side) {
    static const std::vector<ExpectedConcept> novice = {
        {"-", {}},
        {"R", {{5, 6}}},
        {"D", {{1, 9}}},
        {"L", {{1, 10}}},
        {"RD", {{1}, {6}}},
        {"RL", {{1}, {3, 4}, {6}}},
        {"RDL", {{1}, {3}, {6}}},
    };
    static const std::vector<ExpectedConcept> expert = {
        {"-", {}},
        {"R", {{5, 6}}},
        {"L", {{1, 3, 6, 9}}},
        {"DL", {{1, 9}}},
        {"RDL", {{1}, {6}}},
    };
    return side == 1 ? novice : expert;
}

const std::vector<ExpectedMergedRow>& expected_merged() {
    // Slot order: Rarity (shared), Duration_1, Loss_1, Duration_2, Loss_2.
    static const std::vector<ExpectedMergedRow> rows = {
        {"RDL", {"UU", "A", "D"}, {"5", "25", "30", "20", "30"}},
        {"RDL", {"OU", "B", "F"}, {"4", "35", "40", "ALL", "ALL"}},
        {"RDL", {"OU", "C", "B"}, {"1", "35", "50", "30", "30"}},
        {"RD", {"UU", "A", "D"}, {"5", "25", "ALL", "ALL", "ALL"}},
        {"RD", {"OU", "C", "B"}, {"1", "35", "ALL", "ALL", "ALL"}},
        {"RL", {"UU", "A", "D"}, {"5", "ALL", "30", "ALL", "ALL"}},
        {"RL", {"OU", "B", "F"}, {"4", "ALL", "40", "ALL", "ALL"}},
        {"RL", {"OU", "B", "A"}, {"4", "ALL", "40", "ALL", "ALL"}},
        {"RL", {"OU", "C", "B"}, {"1", "ALL", "50", "ALL", "ALL"}},
        {"DL", {"UU", "A", "D"}, {"ALL", "ALL", "ALL", "20", "30"}},
        {"DL", {"UU", "E", "D"}, {"ALL", "ALL", "ALL", "20", "30"}},
        {"R", {"OU", "C", "A"}, {"1", "ALL", "ALL", "ALL", "ALL"}},
        {"R", {"OU", "C", "B"}, {"1", "ALL", "ALL", "ALL", "ALL"}},
        {"D", {"UU", "A", "D"}, {"ALL", "25", "ALL", "ALL", "ALL"}},
        {"D", {"UU", "E", "D"}, {"ALL", "25", "ALL", "ALL", "ALL"}},
        {"L", {"UU", "A", "D"}, {"ALL", "ALL", "30", "ALL", "30"}},
        {"L", {"OU", "B", "F"}, {"ALL", "ALL", "ALL", "ALL", "30"}},
        {"L", {"OU", "C", "B"}, {"ALL", "ALL", "ALL", "ALL", "30"}},
        {"L", {"UU", "E", "D"}, {"ALL", "ALL", "ALL", "ALL", "30"}},
        {"L", {"UU", "E", "E"}, {"ALL", "ALL", "30", "ALL", "ALL"}},
    };
    return rows;
}

const std::vector<ExpectedMergedRow>& expected_abridged() {
    // Slot order: Duration_1, Loss_1, Duration_2, Loss_2.
    static const std::vector<ExpectedMergedRow> rows = {
        {"RDL", {"UU", "A", "D"}, {"25", "30", "20", "30"}},
        {"RDL", {"OU", "B", "F"}, {"35", "40", "ALL", "ALL"}},
        {"RDL", {"OU", "C", "B"}, {"35", "50", "30", "30"}},
        {"DL", {"UU", "A", "D"}, {"ALL", "ALL", "20", "30"}},
        {"DL", {"UU", "E", "D"}, {"ALL", "ALL", "20", "30"}},
    };
    return rows;
}

const std::vector<ExpectedCell>& expected_emerging_finite() {
    static const std::vector<ExpectedCell> cells = {
        {{"ALL", "ALL", "B"}, {"1.17", "1.67"}}, {{"ALL", "C", "ALL"}, {"1.17", "1.67"}},
        {{"OU", "ALL", "ALL"}, {"2.33", "3"}},   {{"ALL", "C", "B"}, {"1.17", "1.67"}},
        {{"OU", "ALL", "B"}, {"1.17", "1.67"}},  {{"OU", "C", "ALL"}, {"1.17", "1.67"}},
        {{"OU", "C", "B"}, {"1.17", "1.67"}},
    };
    return cells;
}

const std::vector<ExpectedCell>& expected_emerging_infinite_recorded() {
    static const std::vector<ExpectedCell> cells = {
        {{"ALL", "ALL", "F"}, {"inf", "inf"}},  {{"ALL", "ALL", "B"}, {"inf", "inf"}},
        {{"ALL", "B", "ALL"}, {"inf", "inf"}},  {{"ALL", "C", "ALL"}, {"inf", "inf"}},
        {{"OU", "ALL", "ALL"}, {"inf", "inf"}}, {{"ALL", "B", "F"}, {"inf", "inf"}},
        {{"ALL", "C", "B"}, {"inf", "inf"}},    {{"ALL", "E", "D"}, {"inf", "inf"}},
        {{"OU", "ALL", "F"}, {"inf", "inf"}},   {{"OU", "ALL", "B"}, {"inf", "inf"}},
        {{"OU", "B", "ALL"}, {"inf", "inf"}},   {{"OU", "C", "ALL"}, {"inf", "inf"}},
        {{"OU", "B", "F"}, {"inf", "inf"}},     {{"OU", "C", "B"}, {"inf", "inf"}},
        {{"UU", "E", "D"}, {"inf", "inf"}},
    };
    return cells;
}

const std::vector<ExpectedCell>& expected_l_border_finite() {
    static const std::vector<ExpectedCell> cells = {
        {{"ALL", "ALL", "B"}, {"1.17", "1.67"}},
        {{"ALL", "C", "ALL"}, {"1.17", "1.67"}},
        {{"OU", "ALL", "ALL"}, {"2.33", "3"}},
    };
    return cells;
}

const std::vector<ExpectedCell>& expected_closed_finite() {
    static const std::vector<ExpectedCell> cells = {
        {{"OU", "ALL", "ALL"}, {"2.33", "3"}},
        {{"OU", "C", "B"}, {"1.17", "1.67"}},
    };
    return cells;
}

const std::vector<ExpectedCell>& expected_closed_infinite_recorded() {
    static const std::vector<ExpectedCell> cells = {
        {{"OU", "ALL", "ALL"}, {"inf", "inf"}},
        {{"OU", "B", "F"}, {"inf", "inf"}},
        {{"OU", "C", "B"}, {"inf", "inf"}},
        {{"UU", "E", "D"}, {"inf", "inf"}},
    };
    return cells;
}

const std::vector<ExpectedCell>& expected_closed_l_finite() {
    static const std::vector<ExpectedCell> cells = {
        {{"ALL", "ALL", "B"}, {"1.17", "1.67"}},
        {{"ALL", "C", "ALL"}, {"1.17", "1.67"}},
        {{"OU", "ALL", "ALL"}, {"2.33", "3"}},
        {{"OU", "C", "B"}, {"1.17", "1.67"}},
    };
    return cells;
}

const std::vector<ExpectedCell>& expected_closed_l_infinite_recorded() {
    static const std::vector<ExpectedCell> cells = {
        {{"ALL", "ALL", "F"}, {"inf", "inf"}},  {{"ALL", "ALL", "B"}, {"inf", "inf"}},
        {{"ALL", "B", "ALL"}, {"inf", "inf"}},  {{"ALL", "C", "ALL"}, {"inf", "inf"}},
        {{"OU", "ALL", "ALL"}, {"inf", "inf"}}, {{"ALL", "E", "D"}, {"inf", "inf"}},
        {{"OU", "B", "F"}, {"inf", "inf"}},     {{"OU", "C", "B"}, {"inf", "inf"}},
        {{"UU", "E", "D"}, {"inf", "inf"}},
    };
    return cells;
}

const std::vector<ExpectedMeasuredBlock>& expected_loss_measured_blocks() {
    static const std::vector<ExpectedMeasuredBlock> blocks = {
        {"RDL",
         {
             {{"ALL", "ALL", "B"}, {"1.67"}},
             {{"ALL", "C", "ALL"}, {"1.67"}},
             {{"OU", "ALL", "ALL"}, {"3"}},
             {{"ALL", "C", "B"}, {"1.67"}},
             {{"OU", "ALL", "B"}, {"1.67"}},
             {{"OU", "C", "ALL"}, {"1.67"}},
             {{"OU", "C", "B"}, {"1.67"}},
         }},
        {"DL",
         {
             {{"ALL", "ALL", "D"}, {"inf"}},
             {{"ALL", "A", "ALL"}, {"inf"}},
             {{"ALL", "E", "ALL"}, {"inf"}},
             {{"ALL", "A", "D"}, {"inf"}},
             {{"ALL", "E", "D"}, {"inf"}},
             {{"UU", "ALL", "ALL"}, {"inf"}},
             {{"UU", "ALL", "D"}, {"inf"}},
             {{"UU", "A", "ALL"}, {"inf"}},
             {{"UU", "E", "ALL"}, {"inf"}},
             {{"UU", "A", "D"}, {"inf"}},
             {{"UU", "E", "D"}, {"inf"}},
         }},
        {"L",
         {
             {{"ALL", "ALL", "F"}, {"inf"}},
             {{"ALL", "ALL", "B"}, {"inf"}},
             {{"ALL", "B", "ALL"}, {"inf"}},
             {{"ALL", "C", "ALL"}, {"inf"}},
             {{"OU", "ALL", "ALL"}, {"inf"}},
             {{"ALL", "B", "F"}, {"inf"}},
             {{"ALL", "C", "B"}, {"inf"}},
             {{"ALL", "E", "D"}, {"inf"}},
             {{"OU", "ALL", "F"}, {"inf"}},
             {{"OU", "ALL", "B"}, {"inf"}},
             {{"OU", "B", "ALL"}, {"inf"}},
             {{"OU", "C", "ALL"}, {"inf"}},
             {{"OU", "B", "F"}, {"inf"}},
             {{"OU", "C", "B"}, {"inf"}},
             {{"UU", "E", "D"}, {"inf"}},
         }},
    };
    return blocks;
}

namespace {

void append_cells(std::string& out, const std::vector<ExpectedCell>& cells) {
    for (const auto& cell : cells) {
        for (const auto& d : cell.dims) out += d + " ";
        for (std::size_t i = 0; i < cell.rates.size(); ++i) {
            out += cell.rates[i];
            out += i + 1 < cell.rates.size() ? " " : "";
        }
        out += "\n";
    }
}

std::string render_concepts(const std::vector<ExpectedConcept>& concepts) {
    std::string out;
    for (const auto& c : concepts) {
        out += c.intension;
        for (const auto& cls : c.classes) {
            out += " ";
            for (std::size_t i = 0; i < cls.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(cls[i]);
            }
        }
        out += "\n";
    }
    return out;
}

}  // namespace

std::vector<std::string> write_fixture_files(const std::string& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    std::vector<std::string> written;

    auto emit = [&](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(directory) / name, std::ios::binary);
        if (!out) throw IngestError("cannot write '" + name + "' in '" + directory + "'");
        out << content;
        written.push_back(name);
    };

    emit("pokemon.csv", pokemon_csv());
    emit("pokemon_1.csv", pokemon_side1_csv());
    emit("pokemon_2.csv", pokemon_side2_csv());
    emit("pokemon.schema.json", pokemon_schema_json());
    emit("pokemon_side.schema.json", pokemon_side_schema_json());

    for (int side : {1, 2}) {
        std::string cube;
        for (const auto& e : expected_skycube(side)) {
            cube += e.subspace;
            for (RowId id : e.members) cube += " " + std::to_string(id);
            cube += "\n";
        }
        emit("golden_skycube_" + std::to_string(side) + ".txt", cube);
        emit("golden_agree_lattice_" + std::to_string(side) + ".txt",
             render_concepts(expected_agree_lattice(side)));
        emit("golden_skyline_lattice_" + std::to_string(side) + ".txt",
             render_concepts(expected_skyline_lattice(side)));
    }

    auto render_rows = [](const std::vector<ExpectedMergedRow>& rows) {
        std::string out;
        for (const auto& row : rows) {
            out += row.subspace;
            for (const auto& d : row.dims) out += " " + d;
            for (const auto& s : row.slots) out += " " + s;
            out += "\n";
        }
        return out;
    };
    emit("golden_merged.txt", render_rows(expected_merged()));
    emit("golden_abridged.txt", render_rows(expected_abridged()));

    auto render_cells = [](const std::vector<ExpectedCell>& cells) {
        std::string out;
        append_cells(out, cells);
        return out;
    };
    emit("golden_emerging_finite.txt", render_cells(expected_emerging_finite()));
    emit("golden_emerging_infinite_recorded.txt",
         render_cells(expected_emerging_infinite_recorded()));
    emit("golden_l_border_finite.txt", render_cells(expected_l_border_finite()));
    emit("golden_closed_finite.txt", render_cells(expected_closed_finite()));
    emit("golden_closed_infinite_recorded.txt",
         render_cells(expected_closed_infinite_recorded()));
    emit("golden_closed_l_finite.txt", render_cells(expected_closed_l_finite()));
    emit("golden_closed_l_infinite_recorded.txt",
         render_cells(expected_closed_l_infinite_recorded()));

    std::string blocks;
    for (const auto& block : expected_loss_measured_blocks()) {
        blocks += "block " + block.subspace + "\n";
        append_cells(blocks, block.cells);
    }
    emit("golden_loss_blocks.txt", blocks);

    return written;
}

}  // namespace sky::fixtures
