// Copyright 2026 The qdecay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qdecay <config-path>
//
// Exit status: 0 success, 1 verification failure, 2 configuration error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qdecay/scenario/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit entanglement under local decaying reservoirs"};
    std::string config_path;
    app.add_option("config", config_path, "scenario configuration file (key = value lines)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qdecay::scenario::kExitConfigError;
    }

    try {
        return qdecay::scenario::run_config_file(config_path, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qdecay::scenario::kExitConfigError;
    }
}
