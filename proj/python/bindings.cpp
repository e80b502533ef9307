#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "imprint/error.hpp"
#include "imprint/pipeline.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

imprint::PipelineOptions options_of(const std::string& text) {
  return imprint::PipelineOptions::from_json(text.empty() ? json::object() : json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_imprint, m) {
  m.doc() = "Covering and separation for regular languages (JSON in, JSON out)";
  auto input_error = py::register_exception<imprint::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<imprint::CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  (void)input_error;

  m.def(
      "cover",
      [](const std::string& instance) {
        json j;
        try {
          j = json::parse(instance);
        } catch (const json::exception& e) {
          throw imprint::InputError(std::string("malformed instance: ") + e.what());
        }
        return imprint::cmd_cover(imprint::Instance::from_json(j)).to_json().dump();
      },
      py::arg("instance"));
  m.def(
      "separate",
      [](const std::string& cls, const std::string& alphabet, const std::string& l1, const std::string& l2,
         const std::string& options) {
        return imprint::cmd_separate(imprint::parse_class(cls), imprint::Alphabet(alphabet), l1, l2,
                                     options_of(options))
            .to_json()
            .dump();
      },
      py::arg("cls"), py::arg("alphabet"), py::arg("l1"), py::arg("l2"), py::arg("options") = "");
  m.def(
      "member",
      [](const std::string& cls, const std::string& alphabet, const std::string& l, const std::string& options) {
        return imprint::cmd_member(imprint::parse_class(cls), imprint::Alphabet(alphabet), l, options_of(options))
            .to_json()
            .dump();
      },
      py::arg("cls"), py::arg("alphabet"), py::arg("language"), py::arg("options") = "");
  m.def(
      "imprint",
      [](const std::string& cls, const std::string& alphabet, const std::vector<std::string>& languages,
         const std::string& options, bool chain) {
        return imprint::cmd_imprint(imprint::parse_class(cls), imprint::Alphabet(alphabet), languages,
                                    options_of(options), chain)
            .to_json()
            .dump();
      },
      py::arg("cls"), py::arg("alphabet"), py::arg("languages"), py::arg("options") = "", py::arg("chain") = false);
  m.def(
      "oracle",
      [](const std::string& which, const std::string& alphabet, const std::vector<std::string>& args,
         const std::string& options) {
        return imprint::cmd_oracle(which, imprint::Alphabet(alphabet), args, options_of(options)).dump();
      },
      py::arg("which"), py::arg("alphabet"), py::arg("args"), py::arg("options") = "");
}
