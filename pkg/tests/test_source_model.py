import textwrap

import pytest
from hypothesis import given, settings, strategies as st

from iccsmells.javasrc import (
    IntentClass, ReceiverKind, StatementKind, classify_intent_argument, parse_source_unit,
)
from iccsmells.javasrc.model import ConstValue


def unit(src: str, path: str = "A.java"):
    return parse_source_unit(textwrap.dedent(src), path)


def call(u, name, nth=0):
    return u.calls_named(name)[nth]


def arg_const(u, name, index=0, nth=0):
    cv = call(u, name, nth).arg(index).const_value
    return None if cv is None else cv.value


def test_single_call_extraction():
    u = unit("""
        class A extends Activity {
            void go(Intent intent) { sendBroadcast(intent); }
        }
    """)
    assert [t.name for t in u.type_decls] == ["A"]
    assert [c.method_name for c in u.call_sites] == ["sendBroadcast"]
    c = u.call_sites[0]
    assert c.enclosing_type == "A" and c.enclosing_method == "go"
    assert (c.location.file, c.location.line, c.location.column) == ("A.java", 3, 30)


def test_unbalanced_brace_after_class_is_recovered():
    u = unit("class A { void m() { foo(); } }\n}\n")
    assert [t.name for t in u.type_decls] == ["A"]
    assert len(u.diagnostics) == 1 and u.diagnostics[0].kind == "syntax_error"


def test_empty_file():
    u = unit("")
    assert (u.type_decls, u.call_sites, u.diagnostics) == ((), (), ())


def test_broken_method_does_not_hide_later_ones():
    u = unit("""
        class A extends Activity {
            void broken( { int x = ; }
            void ok() { registerReceiver(r, f); }
        }
    """)
    assert u.diagnostics
    assert [c.method_name for c in u.call_sites] == ["registerReceiver"]
    assert u.call_sites[0].receiver_kind is ReceiverKind.CONTEXT_LIKE


@pytest.mark.parametrize("src, name, kind", [
    ("PendingIntent.getBroadcast(c, 0, i, 0);", "getBroadcast", ReceiverKind.PENDING_INTENT),
    ("UriMatcher matcher = new UriMatcher(-1); matcher.match(uri);", "match", ReceiverKind.URI_MATCHER),
    ("registerReceiver(r, f);", "registerReceiver", ReceiverKind.CONTEXT_LIKE),
    ("this.registerReceiver(r, f);", "registerReceiver", ReceiverKind.CONTEXT_LIKE),
    ("getApplicationContext().sendBroadcast(i);", "sendBroadcast", ReceiverKind.CONTEXT_LIKE),
    ("IntentFilter f = new IntentFilter(); f.addDataScheme(\"x\");", "addDataScheme", ReceiverKind.INTENT_FILTER),
    ("Binder.getCallingUid();", "getCallingUid", ReceiverKind.BINDER),
    ("LocalBroadcastManager.getInstance(this).registerReceiver(r, f);", "registerReceiver",
     ReceiverKind.LOCAL_BROADCAST_MANAGER),
    ("web.loadUrl(\"x\");", "loadUrl", ReceiverKind.WEB_VIEW),
    ("helper.registerReceiver(r, f);", "registerReceiver", ReceiverKind.UNKNOWN),
])
def test_receiver_kinds(src, name, kind):
    u = unit(f"""
        class A extends AppCompatActivity {{
            private WebView web;
            void m(Context ctx) {{ {src} }}
        }}
    """)
    assert call(u, name).receiver_kind is kind


def test_bare_calls_use_enclosing_types():
    u = unit("""
        class Plain {
            void m() { registerReceiver(r, f); }
        }
        class Outer extends Service {
            class Inner {
                void m() { registerReceiver(r, f); }
            }
        }
        class R extends BroadcastReceiver {
            void m() { registerReceiver(r, f); }
        }
        class MyBinder extends Binder {
            void m() { getCallingUid(); }
        }
        class Base extends Activity {}
        class Derived extends Base {
            void m() { registerReceiver(r, f); }
        }
    """)
    kinds = {c.enclosing_type: c.receiver_kind for c in u.call_sites}
    assert kinds == {"Plain": ReceiverKind.UNKNOWN, "Inner": ReceiverKind.CONTEXT_LIKE,
                     "R": ReceiverKind.CONTEXT_LIKE, "MyBinder": ReceiverKind.BINDER,
                     "Derived": ReceiverKind.CONTEXT_LIKE}


def test_constant_evaluation():
    u = unit("""
        class A {
            static final String P = "a.b.C";
            static final String Q = P + ".D";
            static String mutable = "x";
            String neverWritten = "y";
            void bump() { mutable = "z"; }
            void m(String param) {
                String local = "l";
                String changed = "c";
                changed = "d";
                use(null, P, Q, mutable, neverWritten, local, changed, param, 42, true, "s" + 1, 'c', 1.5, A.P,
                    this.neverWritten, compute());
            }
        }
    """)
    c = call(u, "use")
    values = [a.const_value for a in c.argument_summaries]
    assert values == [
        ConstValue("null", None), ConstValue("string", "a.b.C"), ConstValue("string", "a.b.C.D"), None,
        ConstValue("string", "y"), ConstValue("string", "l"), None, None, ConstValue("integer", 42),
        ConstValue("boolean", True), ConstValue("string", "s1"), None, None, ConstValue("string", "a.b.C"),
        ConstValue("string", "y"), None,
    ]
    assert c.arg(0).is_null_literal and not c.arg(1).is_null_literal


def test_constant_cycle_terminates():
    u = unit("""
        class A {
            static final String X = Y + "a";
            static final String Y = X + "b";
            void m() { use(X); }
        }
    """)
    assert arg_const(u, "use") is None


@pytest.mark.parametrize("stmts, expected", [
    ('sendBroadcast(new Intent(Intent.ACTION_VIEW, uri));', IntentClass.IMPLICIT),
    ('sendBroadcast(new Intent("a.b"));', IntentClass.IMPLICIT),
    ('sendBroadcast(new Intent());', IntentClass.IMPLICIT),
    ('sendBroadcast(new Intent(ctx, Foo.class));', IntentClass.EXPLICIT),
    ('sendBroadcast(new Intent("a", uri, ctx, Foo.class));', IntentClass.EXPLICIT),
    ('sendBroadcast(new Intent("a").setPackage("p"));', IntentClass.EXPLICIT),
    ('sendBroadcast(new Intent("a").putExtra("k", 1));', IntentClass.IMPLICIT),
    ('Intent i = new Intent("a"); i.setClassName("p", "p.C"); sendBroadcast(i);', IntentClass.EXPLICIT),
    ('Intent i = new Intent("a"); sendBroadcast(i); i.setClassName("p", "p.C");', IntentClass.IMPLICIT),
    ('Intent i = new Intent("a"); i.putExtra("k", 1).setComponent(cn); sendBroadcast(i);', IntentClass.EXPLICIT),
    ('Intent i = new Intent("a"); i = new Intent(ctx, Foo.class); sendBroadcast(i);', IntentClass.UNKNOWN),
    ('sendBroadcast(param);', IntentClass.UNKNOWN),
    ('sendBroadcast(field);', IntentClass.UNKNOWN),
    ('sendBroadcast(getIntent());', IntentClass.UNKNOWN),
    ('sendBroadcast(new Intent(param));', IntentClass.UNKNOWN),
    ('sendBroadcast(new Intent(ctx, cls));', IntentClass.EXPLICIT),
    ('sendBroadcast(build());', IntentClass.UNKNOWN),
])
def test_intent_classification(stmts, expected):
    u = unit(f"""
        class A extends Activity {{
            Intent field;
            void m(Intent param, Class<?> cls, Uri uri) {{ {stmts} }}
        }}
    """)
    assert classify_intent_argument(call(u, "sendBroadcast"), 0) is expected


def test_explicit_label_requires_targeting():
    u = unit("""
        class A extends Activity {
            void m() {
                Intent i = new Intent("a");
                i.setAction("b");
                i.putExtra("k", "v");
                sendBroadcast(i);
            }
        }
    """)
    assert classify_intent_argument(call(u, "sendBroadcast"), 0) is IntentClass.IMPLICIT


@pytest.mark.parametrize("body, kind, count", [
    ("return false;", StatementKind.RETURN_FALSE, 1),
    ("return true;", StatementKind.RETURN_TRUE, 1),
    ("return null;", StatementKind.RETURN_NULL, 1),
    ("return super.shouldOverrideUrlLoading(view, url);", StatementKind.SUPER_CALL_ONLY, 1),
    ("view.loadUrl(url); return true;", StatementKind.LOAD_URL_THEN_RETURN, 2),
    ("other.loadUrl(url); return true;", StatementKind.OTHER, 2),
    ('if (url.startsWith("https://ok")) { return false; } return true;', StatementKind.OTHER, 2),
    ("log(url); log(url); return false;", StatementKind.OTHER, 3),
])
def test_body_summary(body, kind, count):
    u = unit(f"""
        class C extends WebViewClient {{
            public boolean shouldOverrideUrlLoading(WebView view, String url) {{ {body} }}
        }}
    """)
    summary = u.type_decls[0].methods[0].body_summary
    assert summary.sole_statement_kind is kind
    assert summary.statement_count == count


def test_bodyless_methods_and_anonymous_types():
    u = unit("""
        abstract class A {
            abstract void m();
            void n() {
                web.setWebViewClient(new WebViewClient() {
                    public boolean shouldOverrideUrlLoading(WebView v, String u) { return false; }
                });
            }
        }
    """)
    a, anon = u.type_decls
    assert a.methods_named("m")[0].body_summary is None
    assert a.methods_named("n")[0].body_summary.calls_within == ("setWebViewClient",)
    assert anon.name == "A$anon1" and anon.supertypes == ("WebViewClient",)
    assert call(u, "setWebViewClient").arg(0).new_type == "A$anon1"


def test_call_sites_are_sorted_and_on_path():
    u = unit("""
        class A {
            static { b(); }
            void m() { c(); a(); }
            int f = d();
        }
    """, path="x/A.java")
    locs = [(c.location.line, c.location.column) for c in u.call_sites]
    assert locs == sorted(locs)
    assert {c.location.file for c in u.call_sites} == {"x/A.java"}


JAVA_TOKENS = st.sampled_from([
    "class", "A", "{", "}", "(", ")", ";", "void", "m", "new", "Intent", "\"s\"", "'c'", "=", ".",
    ",", "<", ">", "->", "::", "return", "if", "else", "for", "switch", "case", ":", "+", "1",
    "@", "[", "]", "this", "super", "/*", "*/", "//", "\n", "\"", "enum", "interface", "var",
])


@settings(max_examples=300, deadline=None)
@given(st.lists(JAVA_TOKENS, max_size=80).map(" ".join))
def test_parser_total_on_token_soup(text):
    u = parse_source_unit(text, "F.java")
    for c in u.call_sites:
        assert c.location.file == "F.java"
        assert c.arg_count == len(c.argument_summaries)


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=400))
def test_parser_total_on_arbitrary_text(text):
    parse_source_unit(text, "F.java")


def test_deep_nesting_does_not_crash():
    u = parse_source_unit("class A { void m() { x = " + "(" * 5000 + "1" + ")" * 5000 + "; } }", "F.java")
    assert u.path == "F.java"
