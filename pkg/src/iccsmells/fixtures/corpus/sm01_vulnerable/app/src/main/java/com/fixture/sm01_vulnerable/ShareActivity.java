package com.fixture.sm01_vulnerable;

import android.app.Activity;
import android.content.Intent;
import android.net.Uri;

public class ShareActivity extends Activity {
    private static final String TARGET = "com.example.viewer";

    void share(Uri uri) {
        grantUriPermission(TARGET, uri, Intent.FLAG_GRANT_READ_URI_PERMISSION);
        getApplicationContext().grantUriPermission("com.example.other", uri,
                Intent.FLAG_GRANT_WRITE_URI_PERMISSION);
    }
}
