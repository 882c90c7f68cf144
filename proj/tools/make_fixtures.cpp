// Writes the shipped Hopf and subgroup fixtures into a directory.
#include "ydcat/io.hpp"

#include <filesystem>
#include <iostream>

using namespace ydcat;

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);
    auto emit = [&](const std::string& file, const json& j) {
        write_json_file((dir / file).string(), j);
        std::cout << (dir / file).string() << "\n";
    };
    FiniteGroup S3 = symmetric_group3();
    emit("z2.json", encode_hopf(function_algebra(cyclic_group(2)), "z2"));
    emit("s3.json", encode_hopf(function_algebra(S3), "s3"));
    emit("kac_paljutkin.json", encode_hopf(kac_paljutkin(), "kac_paljutkin"));
    const std::vector<std::pair<std::string, std::vector<int>>> subs = {
        {"z2", {0, 3}}, {"a3", {0, 1, 2}}, {"trivial", {0}}, {"s3", {0, 1, 2, 3, 4, 5}}};
    for (const auto& [name, elems] : subs) {
        SubgroupFixture f{"s3", restriction_to_subgroup(S3, elems, name)};
        emit("s3_sub_" + name + ".json", encode_subgroup(f));
    }
    return 0;
}
