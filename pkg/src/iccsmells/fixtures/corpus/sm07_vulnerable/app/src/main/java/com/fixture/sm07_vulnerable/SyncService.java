package com.fixture.sm07_vulnerable;

import android.app.Service;
import android.content.Context;
import android.content.Intent;
import android.content.pm.PackageManager;
import android.os.Binder;
import android.os.IBinder;

public class SyncService extends Service {
    static final String PERM = "com.fixture.permission.SYNC";

    @Override
    public int onStartCommand(Intent intent, int flags, int startId) {
        if (checkCallingOrSelfPermission(PERM) != PackageManager.PERMISSION_GRANTED) {
            stopSelf();
        }
        return START_NOT_STICKY;
    }

    @Override
    public IBinder onBind(Intent intent) {
        return new Api(this);
    }

    static class Api extends Binder {
        private final Context context;

        Api(Context context) {
            this.context = context;
        }

        void doWork() {
            int uid = Binder.getCallingUid();
            context.enforcePermission(PERM, Binder.getCallingPid(), uid, "sync denied");
        }
    }
}
