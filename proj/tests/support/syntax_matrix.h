#pragma once

// Annotated fixture corpus for call extraction. Positive fixtures cover
// every supported import/call shape; negative fixtures pin the
// zero-false-positive behavior (shadowing, same-named locals, other
// exports, occurrences inside strings and comments, dynamic constructs).
//
// Every fixture lists the exact call sites it must produce as
// "line:path" pairs; producing any unannotated site is a failure.

#include <string>
#include <vector>

namespace matrix {

struct Fixture {
    const char* name;
    bool positive;
    const char* package;                        // advisory package
    std::vector<const char*> symbols;           // surface symbol strings
    const char* source;
    std::vector<std::pair<int, const char*>> expected_calls;  // (line, path)
    std::vector<const char*> expected_warnings;  // substrings that must appear
};

inline const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = {
        // ---- positives: one per supported syntax row -------------------------
        {"cjs whole require, dot call", true, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "_.merge(a, b);\n",
         {{2, "merge"}}, {}},

        {"cjs whole require via var", true, "lodash", {"merge"},
         "var _ = require('lodash');\n"
         "_.merge(a, b);\n",
         {{2, "merge"}}, {}},

        {"cjs whole require via let", true, "lodash", {"merge"},
         "let _ = require('lodash');\n"
         "_.merge(a, b);\n",
         {{2, "merge"}}, {}},

        {"cjs destructured", true, "lodash", {"merge"},
         "const {merge} = require('lodash');\n"
         "merge(a, b);\n",
         {{2, "merge"}}, {}},

        {"cjs destructured with renaming", true, "lodash", {"merge"},
         "const {merge: m, head} = require('lodash');\n"
         "m(a, b);\n"
         "head(a);\n",
         {{2, "merge"}}, {}},

        {"cjs inline member call", true, "lodash", {"merge"},
         "require('lodash').merge(a, b);\n",
         {{1, "merge"}}, {}},

        {"cjs inline root call", true, "growl", {"."},
         "require('growl')('hello');\n",
         {{1, "."}}, {}},

        {"esm default import, root call", true, "growl", {"."},
         "import d from 'growl';\n"
         "d('hi');\n",
         {{2, "."}}, {}},

        {"esm default import, member call", true, "lodash", {"merge"},
         "import d from 'lodash';\n"
         "d.merge(x);\n",
         {{2, "merge"}}, {}},

        {"esm named import", true, "lodash", {"merge"},
         "import {merge} from 'lodash';\n"
         "merge(x);\n",
         {{2, "merge"}}, {}},

        {"esm named import with renaming", true, "lodash", {"merge"},
         "import {merge as m} from 'lodash';\n"
         "m(x);\n",
         {{2, "merge"}}, {}},

        {"esm namespace import", true, "lodash", {"merge"},
         "import * as ns from 'lodash';\n"
         "ns.merge(x);\n",
         {{2, "merge"}}, {}},

        {"deep static member chain", true, "lodash", {"template.apply"},
         "const _ = require('lodash');\n"
         "_.template.apply(ctx);\n",
         {{2, "template.apply"}}, {}},

        {"bracket access with string literal", true, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "_[\"merge\"](x);\n",
         {{2, "merge"}}, {}},

        {"mixed dot and bracket chain", true, "lodash", {"template.apply"},
         "const _ = require('lodash');\n"
         "_.template[\"apply\"](x);\n",
         {{2, "template.apply"}}, {}},

        {"const alias of one export", true, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "const f = _.merge;\n"
         "f(x);\n",
         {{3, "merge"}}, {}},

        {"const alias of a nested path", true, "lodash", {"template.apply"},
         "const _ = require('lodash');\n"
         "const f = _.template.apply;\n"
         "f(x);\n",
         {{3, "template.apply"}}, {}},

        {"const alias of the whole module", true, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "const g = _;\n"
         "g.merge(x);\n",
         {{3, "merge"}}, {}},

        {"subpath require, root call", true, "lodash", {"merge"},
         "const m = require('lodash/merge');\n"
         "m(x);\n",
         {{2, "merge"}}, {}},

        {"subpath esm named import", true, "lodash", {"fp.cache"},
         "import {cache} from 'lodash/fp';\n"
         "cache(x);\n",
         {{2, "fp.cache"}}, {}},

        {"subpath esm default import", true, "lodash", {"merge"},
         "import m from 'lodash/merge';\n"
         "m(x);\n",
         {{2, "merge"}}, {}},

        {"call at nesting depth", true, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "function go(arr) {\n"
         "  if (arr) {\n"
         "    arr.forEach(item => {\n"
         "      _.merge(item, {});\n"
         "    });\n"
         "  }\n"
         "}\n",
         {{5, "merge"}}, {}},

        {"let alias used before reassignment", true, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "let f = _.merge;\n"
         "f(a);\n"
         "f = other;\n"
         "f(b);\n",
         {{3, "merge"}}, {"reassigned"}},

        {"scoped package", true, "@scope/pkg", {"run"},
         "const s = require('@scope/pkg');\n"
         "s.run(x);\n",
         {{2, "run"}}, {}},

        {"several call sites, chained result", true, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "_.merge(a, b);\n"
         "const out = _.merge(c, d).value;\n",
         {{2, "merge"}, {3, "merge"}}, {}},

        {"call inside template interpolation", true, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "const msg = `result: ${_.merge(a, b)}`;\n",
         {{2, "merge"}}, {}},

        {"constructor invocation", true, "lodash", {"Thing"},
         "const C = require('lodash');\n"
         "const t = new C.Thing(1);\n",
         {{2, "Thing"}}, {}},

        {"tagged template executes the tag", true, "lodash", {"tag"},
         "const _ = require('lodash');\n"
         "const s = _.tag`x ${1}`;\n",
         {{2, "tag"}}, {}},

        {"optional chaining call", true, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "_?.merge(a);\n",
         {{2, "merge"}}, {}},

        {"nested destructuring path", true, "lodash", {"template.apply"},
         "const {template: {apply: ap}} = require('lodash');\n"
         "ap(x);\n",
         {{2, "template.apply"}}, {}},

        {"esm import hoists above earlier use", true, "lodash", {"merge"},
         "run();\n"
         "import {merge as run} from 'lodash';\n",
         {{1, "merge"}}, {}},

        {"helper defined above the require", true, "lodash", {"merge"},
         "function helper(x) { return _.merge(x, {}); }\n"
         "const _ = require('lodash');\n"
         "helper(1);\n",
         {{1, "merge"}}, {}},

        // ---- negatives: zero false positives ---------------------------------
        {"same-named local function", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "function merge(a, b) { return a; }\n"
         "merge(x, y);\n",
         {}, {}},

        {"parameter shadows the binding", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "function f(_) { _.merge(x); }\n",
         {}, {}},

        {"block-scoped shadow", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "{\n"
         "  let _ = other;\n"
         "  _.merge(x);\n"
         "}\n",
         {}, {}},

        {"call to another export", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "_.head(x);\n",
         {}, {}},

        {"longer path never matches a shorter symbol", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "_.merge.cache(x);\n",
         {}, {}},

        {"shorter path never matches a longer symbol", false, "lodash", {"merge.cache"},
         "const _ = require('lodash');\n"
         "_.merge(x);\n",
         {}, {}},

        {"occurrence inside a string literal", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "const s = \"_.merge(a)\";\n",
         {}, {}},

        {"occurrences inside comments", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "// _.merge(a)\n"
         "/* require('lodash').merge(b) */\n",
         {}, {}},

        {"occurrence inside template text", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "const s = `_.merge(a)`;\n",
         {}, {}},

        {"same local name bound to another package", false, "lodash", {"merge"},
         "const _ = require('underscore');\n"
         "_.merge(x);\n",
         {}, {}},

        {"computed member with non-literal key", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "_[key](x);\n",
         {}, {"non-literal"}},

        {"alias reassigned before the call", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "let f = _.merge;\n"
         "f = other;\n"
         "f(x);\n",
         {}, {"reassigned"}},

        {"local object with the package-like name", false, "lodash", {"merge"},
         "const lodash = {merge: function (a) { return a; }};\n"
         "lodash.merge(x);\n",
         {}, {}},

        {"var hoisting shadows inside the function", false, "lodash", {"merge"},
         "const m = require('lodash');\n"
         "function f() { m.merge(1); var m = 2; }\n",
         {}, {}},

        {"named import from an unrelated package", false, "lodash", {"merge"},
         "import {merge} from 'deepmixer';\n"
         "merge(x);\n",
         {}, {}},

        {"dynamic require specifier", false, "lodash", {"merge"},
         "const name = 'lodash';\n"
         "const _ = require(name);\n"
         "_.merge(x);\n",
         {}, {"dynamic require"}},

        {"with statement suppresses resolution", false, "lodash", {"merge"},
         "const {merge} = require('lodash');\n"
         "with (o) { merge(x); }\n",
         {}, {"with statement"}},

        {"closure reassignment drops tracking", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "let f = _.merge;\n"
         "function g() { f = 1; }\n"
         "f(x);\n",
         {}, {"nested function"}},

        {"shadowed require is not the real require", false, "lodash", {"merge"},
         "function load(require) {\n"
         "  const x = require('lodash');\n"
         "  x.merge(a);\n"
         "}\n",
         {}, {}},

        {"bracket access to another export", false, "lodash", {"merge"},
         "const _ = require('lodash');\n"
         "_[\"head\"](x);\n",
         {}, {}},
    };
    return all;
}

}  // namespace matrix
