#include <blp/scenario.hpp>

#include <set>
#include <sstream>

namespace blp::scenario {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string print_decl(const Decl& decl) {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const SubjectDecl& d) {
                   out << "subject " << d.id;
                   if (d.cls) out << ' ' << print_class(*d.cls);
                 },
                 [&](const ObjectDecl& d) {
                   out << "object " << d.id;
                   if (d.cls) out << ' ' << print_class(*d.cls);
                 },
                 [&](const GrantDecl& d) { out << "grant " << d.object << ' ' << d.subject << ' ' << to_string(d.mode); },
                 [&](const ReadingDecl& d) { out << "reading " << d.subject << ' ' << d.object; },
                 [&](const WritingDecl& d) { out << "writing " << d.subject << ' ' << d.object; },
             },
             decl);
  return out.str();
}

std::string print_block(const std::vector<Decl>& decls) {
  std::string out = "state\n";
  for (const auto& d : decls) out += "  " + print_decl(d) + "\n";
  out += "end\n";
  return out;
}

}  // namespace

std::string print_class(const SecurityClass& cls) {
  std::ostringstream out;
  out << "level " << cls.level << " cats {";
  bool first = true;
  for (auto c : cls.cats.members()) {
    out << (first ? "" : ", ") << c;
    first = false;
  }
  out << '}';
  return out.str();
}

std::vector<Decl> decls_of(const SystemState& st) {
  std::set<SubjectId> subjects;
  std::set<ObjectId> objects;
  for (const auto& e : st.subject_classes()) subjects.insert(e.id);
  for (const auto& e : st.object_classes()) objects.insert(e.id);
  for (const auto& p : st.matrix()) {
    subjects.insert(p.subject);
    objects.insert(p.object);
  }
  for (const auto* rel : {&st.reads(), &st.writes()}) {
    for (const auto& a : *rel) {
      subjects.insert(a.subject);
      objects.insert(a.object);
    }
  }

  std::vector<Decl> out;
  for (auto s : subjects) {
    bool classified = false;
    for (const auto& e : st.subject_classes())
      if (e.id == s) out.push_back(SubjectDecl{s, e.cls}), classified = true;
    if (!classified) out.push_back(SubjectDecl{s, std::nullopt});
  }
  for (auto o : objects) {
    bool classified = false;
    for (const auto& e : st.object_classes())
      if (e.id == o) out.push_back(ObjectDecl{o, e.cls}), classified = true;
    if (!classified) out.push_back(ObjectDecl{o, std::nullopt});
  }
  for (const auto& p : st.matrix()) out.push_back(GrantDecl{p.object, p.subject, p.mode});
  for (const auto& a : st.reads()) out.push_back(ReadingDecl{a.subject, a.object});
  for (const auto& a : st.writes()) out.push_back(WritingDecl{a.subject, a.object});
  return out;
}

std::string print_state(const SystemState& st) { return print_block(decls_of(st)); }

std::string print_request(const Request& request) {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const GetRead& r) { out << "get-read " << r.subject << ' ' << r.object; },
                 [&](const GetWrite& r) { out << "get-write " << r.subject << ' ' << r.object; },
                 [&](const ReleaseRead& r) { out << "release-read " << r.subject << ' ' << r.object; },
                 [&](const ReleaseWrite& r) { out << "release-write " << r.subject << ' ' << r.object; },
                 [&](const GiveRW& r) {
                   out << "give " << r.giver << ' ' << r.receiver << ' ' << r.object << ' ' << to_string(r.mode);
                 },
                 [&](const RescindRead& r) { out << "rescind-read " << r.rescinder << ' ' << r.target << ' ' << r.object; },
                 [&](const RescindWrite& r) {
                   out << "rescind-write " << r.rescinder << ' ' << r.target << ' ' << r.object;
                 },
                 [&](const ChangeClass& r) { out << "change-class " << r.object << ' ' << print_class(r.cls); },
                 [&](const CreateObject& r) {
                   out << "create-object " << r.subject << ' ' << r.object << ' ' << print_class(r.cls);
                 },
                 [&](const DeleteObject& r) { out << "delete-object " << r.subject << ' ' << r.object; },
             },
             request);
  return out.str();
}

std::string print_script(const Script& script) {
  std::string out;
  for (const auto& statement : script.statements) {
    std::visit(Overloaded{
                   [&](const StateBlock& b) { out += print_block(b.decls); },
                   [&](const Command& c) { out += print_request(c.request) + "\n"; },
                   [&](const Assert& a) {
                     out += "assert";
                     for (auto p : a.predicates) out += " " + std::string(to_string(p));
                     out += "\n";
                   },
                   [&](const Expect& e) { out += "expect " + std::string(to_string(e.decision)) + "\n"; },
               },
               statement);
  }
  return out;
}

}  // namespace blp::scenario
