// Generates the bundled synthetic tweet corpus as ingest-ready JSONL.

#include <cstdint>
#include <iostream>

#include <CLI11.hpp>

#include "geolex/synth.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Deterministic synthetic tweet corpus generator"};
    std::string output;
    geolex::synth::TweetCorpusParams params;
    app.add_option("--output", output, "JSONL file to write")->required();
    app.add_option("--seed", params.seed, "RNG seed")->capture_default_str();
    app.add_option("--records", params.records, "records to generate")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        geolex::synth::write_jsonl(geolex::synth::make_tweet_corpus(params), output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
